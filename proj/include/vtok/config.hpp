#ifndef VTOK_CONFIG_HPP
#define VTOK_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "vtok/dataset.hpp"

namespace vtok {

/// Tool-wide defaults, loadable from a JSON config file. Resolution order for
/// every parameter: CLI flag, then config file, then the built-in default.
/// The VTOK_CONFIG environment variable names a config file used when no
/// --config flag is given.
struct GlobalConfig {
    int t = 96;
    int k = 24;
    int s = 2;
    int h = 8;
    int w = 8;
    int z = 300; ///< temporal quantization resolution
    int w_hat = 1000; ///< spatial quantization resolution, x axis
    int h_hat = 1000; ///< spatial quantization resolution, y axis
    uint64_t seed = 0;
    FilterConfig filters;
    std::array<uint64_t, kTaskKindCount> task_weights = {51992, 21328, 41385};
    bool emit_all_tasks = false;
    bool quantize_times = true;

    SampleRenderConfig render_config() const;
    BuildConfig build_config() const;
};

inline constexpr const char* kConfigEnvVar = "VTOK_CONFIG";

/// Parses a JSON config file; unknown keys -> FormatError so typos fail loud.
GlobalConfig load_config(const std::string& path);

/// Applies the VTOK_CONFIG / --config resolution and returns defaults when
/// neither is present.
GlobalConfig resolve_config(const std::optional<std::string>& config_flag);

} // namespace vtok

#endif
