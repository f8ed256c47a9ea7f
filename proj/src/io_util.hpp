#ifndef VTOK_IO_UTIL_HPP
#define VTOK_IO_UTIL_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <string>

#include "vtok/errors.hpp"

// Little-endian binary helpers and atomic file writes. The binary formats are
// declared little-endian; raw memory writes are correct only on LE hosts.
static_assert(std::endian::native == std::endian::little,
              "binary dump formats require a little-endian host");

namespace vtok::detail {

template <typename T>
void write_raw(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
bool read_raw(std::istream& in, T& value) {
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    return in.gcount() == static_cast<std::streamsize>(sizeof(T));
}

/// Writes via a temp file in the same directory and renames into place, so a
/// failed run never leaves a partial output at `path`. `fill` receives the
/// open stream; any exception removes the temp file and rethrows.
void atomic_write(const std::string& path, const std::function<void(std::ofstream&)>& fill);

/// Whole-file read; missing file -> IoError with the path.
std::string read_file_bytes(const std::string& path);

} // namespace vtok::detail

#endif
