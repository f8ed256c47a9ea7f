#include "vtok/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include <json.hpp>

#include "vtok/errors.hpp"

namespace vtok {

using nlohmann::json;

SampleRenderConfig GlobalConfig::render_config() const {
    SampleRenderConfig r;
    r.time_resolution = z;
    r.w_resolution = w_hat;
    r.h_resolution = h_hat;
    r.quantize_times = quantize_times;
    return r;
}

BuildConfig GlobalConfig::build_config() const {
    BuildConfig b;
    b.filters = filters;
    b.render = render_config();
    b.task_weights = task_weights;
    b.emit_all_tasks = emit_all_tasks;
    return b;
}

GlobalConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw FormatError(path + ": malformed config JSON");
    }
    if (!j.is_object()) {
        throw FormatError(path + ": config must be a JSON object");
    }

    static const std::set<std::string> known = {
        "t", "k", "s", "h", "w", "z", "w_hat", "h_hat", "seed",
        "filters", "task_weights", "emit_all_tasks", "quantize_times"};
    static const std::set<std::string> known_filters = {
        "static_category_denylist", "max_bbox_area_ratio", "min_similarity",
        "max_trajectory_area_drift"};

    for (const auto& [key, value] : j.items()) {
        if (known.find(key) == known.end()) {
            throw FormatError(path + ": unknown config key '" + key + "'");
        }
    }

    GlobalConfig cfg;
    try {
        if (j.contains("t")) cfg.t = j["t"].get<int>();
        if (j.contains("k")) cfg.k = j["k"].get<int>();
        if (j.contains("s")) cfg.s = j["s"].get<int>();
        if (j.contains("h")) cfg.h = j["h"].get<int>();
        if (j.contains("w")) cfg.w = j["w"].get<int>();
        if (j.contains("z")) cfg.z = j["z"].get<int>();
        if (j.contains("w_hat")) cfg.w_hat = j["w_hat"].get<int>();
        if (j.contains("h_hat")) cfg.h_hat = j["h_hat"].get<int>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
        if (j.contains("emit_all_tasks")) cfg.emit_all_tasks = j["emit_all_tasks"].get<bool>();
        if (j.contains("quantize_times")) cfg.quantize_times = j["quantize_times"].get<bool>();
        if (j.contains("filters")) {
            const json& f = j["filters"];
            for (const auto& [key, value] : f.items()) {
                if (known_filters.find(key) == known_filters.end()) {
                    throw FormatError(path + ": unknown filter key '" + key + "'");
                }
            }
            if (f.contains("static_category_denylist")) {
                cfg.filters.static_category_denylist =
                    f["static_category_denylist"].get<std::vector<std::string>>();
            }
            if (f.contains("max_bbox_area_ratio")) {
                cfg.filters.max_bbox_area_ratio = f["max_bbox_area_ratio"].get<double>();
            }
            if (f.contains("min_similarity")) {
                cfg.filters.min_similarity = f["min_similarity"].get<double>();
            }
            if (f.contains("max_trajectory_area_drift")) {
                cfg.filters.max_trajectory_area_drift =
                    f["max_trajectory_area_drift"].get<double>();
            }
        }
        if (j.contains("task_weights")) {
            const json& w = j["task_weights"];
            for (int t = 0; t < kTaskKindCount; ++t) {
                const std::string key = to_string(static_cast<TaskKind>(t));
                if (w.contains(key)) {
                    cfg.task_weights[static_cast<size_t>(t)] = w[key].get<uint64_t>();
                }
            }
        }
    } catch (const json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
    return cfg;
}

GlobalConfig resolve_config(const std::optional<std::string>& config_flag) {
    if (config_flag) {
        return load_config(*config_flag);
    }
    if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && env[0] != '\0') {
        return load_config(env);
    }
    return GlobalConfig{};
}

} // namespace vtok
