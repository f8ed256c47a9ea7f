#include "io_util.hpp"

#include <filesystem>
#include <functional>
#include <random>
#include <sstream>

namespace vtok::detail {

namespace fs = std::filesystem;

void atomic_write(const std::string& path, const std::function<void(std::ofstream&)>& fill) {
    fs::path target(path);
    fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");

    std::random_device rd;
    std::ostringstream tmp_name;
    tmp_name << target.filename().string() << ".tmp." << std::hex << rd();
    fs::path tmp = dir / tmp_name.str();

    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open for writing: " + tmp.string());
        }
        try {
            fill(out);
        } catch (...) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw;
        }
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write failed: " + path);
        }
    }

    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place: " + path);
    }
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace vtok::detail
