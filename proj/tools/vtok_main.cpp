// vtok: event-aware video token compression and instruction-dataset tooling.
//
// Exit codes: 0 success, 1 validation/usage error, 2 I/O or format error.
// Analytic subcommands print JSON to stdout; diagnostics go to stderr.

#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vtok/compression.hpp"
#include "vtok/config.hpp"
#include "vtok/dataset.hpp"
#include "vtok/errors.hpp"
#include "vtok/features.hpp"
#include "vtok/fixtures.hpp"
#include "vtok/segmentation.hpp"
#include "vtok/templates.hpp"

namespace {

using nlohmann::json;
using namespace vtok;

// flag > config file > built-in default
template <typename T>
T resolve(const CLI::Option* opt, const T& flag_value, const T& config_value) {
    return (opt != nullptr && opt->count() > 0) ? flag_value : config_value;
}

std::unique_ptr<SimilarityScorer> make_scorer(const std::string& spec) {
    const size_t colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "constant") {
        return std::make_unique<ConstantScorer>(arg.empty() ? 1.0 : std::stod(arg));
    }
    if (kind == "seeded") {
        return std::make_unique<SeededScorer>(arg.empty() ? 0ull : std::stoull(arg));
    }
    if (kind == "lookup") {
        if (arg.empty()) {
            throw ValidationError("lookup scorer needs a table path: lookup:<file.json>");
        }
        std::ifstream in(arg);
        if (!in) {
            throw IoError("cannot open scorer table: " + arg);
        }
        json j = json::parse(in, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw FormatError(arg + ": scorer table must be a JSON object");
        }
        double fallback = 0.0;
        std::map<std::string, double> table;
        for (const auto& [key, value] : j.items()) {
            if (key == "__default__") {
                fallback = value.get<double>();
            } else {
                table[key] = value.get<double>();
            }
        }
        return std::make_unique<LookupScorer>(std::move(table), fallback);
    }
    throw ValidationError("unknown scorer '" + spec +
                          "' (expected constant:<v>, seeded:<seed> or lookup:<file>)");
}

int run(int argc, char** argv) {
    CLI::App app{"event-aware video token compression and dataset tooling"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    app.add_option("--config", config_path, "JSON config file (or set $" +
                                                std::string(kConfigEnvVar) + ")");

    // segment
    auto* seg_cmd = app.add_subcommand("segment", "split a feature dump into events");
    std::string seg_input;
    int seg_k = 0;
    bool seg_emit_series = false;
    seg_cmd->add_option("--input", seg_input, "IMVF feature dump")->required();
    auto* seg_k_opt = seg_cmd->add_option("--k", seg_k, "number of events");
    seg_cmd->add_flag("--emit-series", seg_emit_series,
                      "include similarity and change-rate series");

    // compress
    auto* cmp_cmd = app.add_subcommand("compress", "build the compressed token layout");
    std::string cmp_input, cmp_out;
    int cmp_k = 0, cmp_s = 0, cmp_z = 0;
    cmp_cmd->add_option("--input", cmp_input, "IMVF feature dump")->required();
    cmp_cmd->add_option("--out", cmp_out, "IMVC output path")->required();
    auto* cmp_k_opt = cmp_cmd->add_option("--k", cmp_k, "number of events (0 pools every frame)");
    auto* cmp_s_opt = cmp_cmd->add_option("--s", cmp_s, "pooling stride");
    auto* cmp_z_opt = cmp_cmd->add_option("--z", cmp_z, "temporal token resolution");

    // budget
    auto* bud_cmd = app.add_subcommand("budget", "token count for a configuration");
    int bud_t = 0, bud_h = 0, bud_w = 0, bud_k = 0, bud_s = 0;
    bool bud_with_time = false;
    auto* bud_t_opt = bud_cmd->add_option("--t", bud_t, "frame count");
    auto* bud_h_opt = bud_cmd->add_option("--h", bud_h, "feature map height");
    auto* bud_w_opt = bud_cmd->add_option("--w", bud_w, "feature map width");
    auto* bud_k_opt = bud_cmd->add_option("--k", bud_k, "number of events");
    auto* bud_s_opt = bud_cmd->add_option("--s", bud_s, "pooling stride");
    bud_cmd->add_flag("--with-time", bud_with_time, "include one temporal token per frame");

    // quantize / dequantize
    auto* q_cmd = app.add_subcommand("quantize", "map a continuous value to a position token");
    auto* dq_cmd = app.add_subcommand("dequantize", "map a position token back to a value");
    std::string q_mode = "time", dq_mode = "time";
    double q_value = 0.0, q_extent = 0.0, dq_extent = 0.0;
    int dq_value = 0, q_res = 0, dq_res = 0;
    q_cmd->add_option("--mode", q_mode, "time or coord")
        ->check(CLI::IsMember({"time", "coord"}));
    q_cmd->add_option("--value", q_value, "timestamp (s) or coordinate (px)")->required();
    q_cmd->add_option("--extent", q_extent, "video duration or frame extent")->required();
    auto* q_res_opt = q_cmd->add_option("--resolution", q_res, "Z or W_hat/H_hat");
    dq_cmd->add_option("--mode", dq_mode, "time or coord")
        ->check(CLI::IsMember({"time", "coord"}));
    dq_cmd->add_option("--value", dq_value, "quantized integer")->required();
    dq_cmd->add_option("--extent", dq_extent, "video duration or frame extent")->required();
    auto* dq_res_opt = dq_cmd->add_option("--resolution", dq_res, "Z or W_hat/H_hat");

    // build-dataset
    auto* bld_cmd = app.add_subcommand("build-dataset", "construct instruction samples");
    std::string bld_records, bld_out, bld_report, bld_scorer = "constant:1.0", bld_templates;
    uint64_t bld_seed = 0;
    bool bld_all_tasks = false;
    bld_cmd->add_option("--records", bld_records, "trajectory JSONL")->required();
    bld_cmd->add_option("--out", bld_out, "output sample JSONL")->required();
    auto* bld_seed_opt = bld_cmd->add_option("--seed", bld_seed, "task/template draw seed");
    bld_cmd->add_option("--report", bld_report, "also write the build report JSON here");
    bld_cmd->add_option("--scorer", bld_scorer,
                        "mock scorer: constant:<v>, seeded:<seed>, lookup:<file>");
    bld_cmd->add_option("--templates", bld_templates, "template pack JSON (default: built-in)");
    auto* bld_all_opt =
        bld_cmd->add_flag("--emit-all-tasks", bld_all_tasks, "one sample per task per record");

    // stats
    auto* st_cmd = app.add_subcommand("stats", "duration/interval histograms");
    std::string st_records, st_samples;
    double st_bin = 10.0;
    st_cmd->add_option("--records", st_records, "trajectory JSONL")->required();
    st_cmd->add_option("--bin", st_bin, "bin width in seconds");
    st_cmd->add_option("--samples", st_samples, "sample JSONL for per-task totals");

    // gen-fixture
    auto* gen_cmd = app.add_subcommand("gen-fixture", "write a synthetic feature dump");
    std::string gen_pattern = "constant", gen_out;
    int gen_t = 0, gen_h = 0, gen_w = 0, gen_d = 4;
    double gen_duration = 60.0;
    uint64_t gen_seed = 0;
    gen_cmd->add_option("--pattern", gen_pattern, "constant, two-block or random")
        ->check(CLI::IsMember({"constant", "two-block", "random"}));
    gen_cmd->add_option("--out", gen_out, "IMVF output path")->required();
    auto* gen_t_opt = gen_cmd->add_option("--t", gen_t, "frame count");
    auto* gen_h_opt = gen_cmd->add_option("--h", gen_h, "feature map height");
    auto* gen_w_opt = gen_cmd->add_option("--w", gen_w, "feature map width");
    gen_cmd->add_option("--d", gen_d, "channels");
    gen_cmd->add_option("--duration", gen_duration, "video duration in seconds");
    gen_cmd->add_option("--seed", gen_seed, "seed for the random pattern");

    app.parse(argc, argv);

    const GlobalConfig cfg = resolve_config(config_path);

    if (seg_cmd->parsed()) {
        const VideoFeatures v = read_feature_dump(seg_input);
        const int k = resolve(seg_k_opt, seg_k, cfg.k);
        const EventSegmentation seg = segment_events(v, k);
        json out;
        out["event_starts"] = seg.event_starts;
        json events = json::array();
        for (const auto& [a, b] : seg.events()) {
            events.push_back({a, b});
        }
        out["events"] = events;
        if (seg_emit_series) {
            const SimilaritySeries s = similarity_series(v);
            out["similarity"] = s.values;
            out["change_rate"] = change_rate_series(s).values;
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (cmp_cmd->parsed()) {
        const VideoFeatures v = read_feature_dump(cmp_input);
        const int k = resolve(cmp_k_opt, cmp_k, cfg.k);
        const int s = resolve(cmp_s_opt, cmp_s, cfg.s);
        const int z = resolve(cmp_z_opt, cmp_z, cfg.z);
        const CompressedVideoTokens c = compress_video(v, k, s, z);
        write_compressed_dump(c, cmp_out);
        json out;
        out["video_id"] = c.video_id;
        out["t"] = c.frames.size();
        out["k"] = c.events;
        out["s"] = c.stride;
        out["visual_token_count"] = c.visual_token_count;
        out["total_token_count_with_time"] = c.total_token_count_with_time;
        out["out"] = cmp_out;
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (bud_cmd->parsed()) {
        const int64_t n = token_budget(resolve(bud_t_opt, bud_t, cfg.t),
                                       resolve(bud_h_opt, bud_h, cfg.h),
                                       resolve(bud_w_opt, bud_w, cfg.w),
                                       resolve(bud_k_opt, bud_k, cfg.k),
                                       resolve(bud_s_opt, bud_s, cfg.s), bud_with_time);
        std::cout << n << "\n";
        return 0;
    }

    if (q_cmd->parsed()) {
        if (q_mode == "time") {
            const int res = resolve(q_res_opt, q_res, cfg.z);
            std::cout << quantize_time(q_value, q_extent, res).z << "\n";
        } else {
            const int res = resolve(q_res_opt, q_res, cfg.w_hat);
            std::cout << quantize_coord(q_value, q_extent, res) << "\n";
        }
        return 0;
    }

    if (dq_cmd->parsed()) {
        if (dq_mode == "time") {
            const int res = resolve(dq_res_opt, dq_res, cfg.z);
            std::cout << dequantize_time(QuantizedTime{dq_value, res}, dq_extent) << "\n";
        } else {
            const int res = resolve(dq_res_opt, dq_res, cfg.w_hat);
            std::cout << dequantize_coord(dq_value, dq_extent, res) << "\n";
        }
        return 0;
    }

    if (bld_cmd->parsed()) {
        const TrajectoryReadResult read = read_trajectories(bld_records);
        for (const auto& issue : read.issues) {
            std::cerr << bld_records << ":" << issue.line << ": " << issue.message << "\n";
        }
        if (!read.issues.empty()) {
            std::cerr << read.issues.size() << " line(s) rejected, " << read.records.size()
                      << " record(s) kept\n";
        }
        BuildConfig bcfg = cfg.build_config();
        if (bld_all_opt->count() > 0) {
            bcfg.emit_all_tasks = bld_all_tasks;
        }
        const uint64_t seed = resolve(bld_seed_opt, bld_seed, cfg.seed);
        const auto scorer = make_scorer(bld_scorer);
        BuildResult result;
        if (bld_templates.empty()) {
            result = build_dataset(read.records, bcfg, *scorer, seed);
        } else {
            const TemplatePack pack = TemplatePack::load(bld_templates);
            // rebuild with the loaded pack by temporarily routing build_sample through it
            result.report.total = read.records.size();
            std::vector<InstructionSample> samples;
            for (size_t i = 0; i < read.records.size(); ++i) {
                const TrajectoryRecord& r = read.records[i];
                if (auto rej = filter_record(r, *scorer, bcfg.filters)) {
                    result.report.rejected_by_reason[*rej] += 1;
                    continue;
                }
                result.report.accepted += 1;
                const auto [task, template_id] = draw_task_and_template(seed, i, bcfg.task_weights);
                if (bcfg.emit_all_tasks) {
                    for (int t = 0; t < kTaskKindCount; ++t) {
                        samples.push_back(build_sample(r, static_cast<TaskKind>(t), template_id,
                                                       bcfg.render, pack));
                        result.report.per_task[static_cast<size_t>(t)] += 1;
                    }
                } else {
                    samples.push_back(build_sample(r, task, template_id, bcfg.render, pack));
                    result.report.per_task[static_cast<size_t>(task)] += 1;
                }
            }
            result.samples = std::move(samples);
        }
        write_samples(result.samples, bld_out);
        const std::string report = result.report.to_json();
        if (!bld_report.empty()) {
            detail_write_report(report, bld_report);
        }
        std::cout << report << "\n";
        return 0;
    }

    if (st_cmd->parsed()) {
        const TrajectoryReadResult read = read_trajectories(st_records);
        for (const auto& issue : read.issues) {
            std::cerr << st_records << ":" << issue.line << ": " << issue.message << "\n";
        }
        StatsReport rep = dataset_stats(read.records, st_bin);
        if (!st_samples.empty()) {
            std::ifstream in(st_samples);
            if (!in) {
                throw IoError("cannot open samples file: " + st_samples);
            }
            std::vector<InstructionSample> samples;
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                json j = json::parse(line, nullptr, false);
                if (j.is_discarded()) continue;
                InstructionSample s;
                s.task = task_kind_from_string(j.at("task").get<std::string>());
                samples.push_back(std::move(s));
            }
            add_task_totals(rep, samples);
        }
        std::cout << rep.to_json() << "\n";
        return 0;
    }

    if (gen_cmd->parsed()) {
        const int t = resolve(gen_t_opt, gen_t, cfg.t);
        const int h = resolve(gen_h_opt, gen_h, cfg.h);
        const int w = resolve(gen_w_opt, gen_w, cfg.w);
        VideoFeatures v;
        if (gen_pattern == "constant") {
            v = fixtures::make_constant_video(t, h, w, gen_d, gen_duration);
        } else if (gen_pattern == "two-block") {
            v = fixtures::make_two_block_video(t, h, w, gen_d, gen_duration);
        } else {
            v = fixtures::make_random_video(t, h, w, gen_d, gen_duration, gen_seed);
        }
        write_feature_dump(v, gen_out);
        json out;
        out["out"] = gen_out;
        out["t"] = t;
        out["shape"] = {h, w, gen_d};
        out["duration_s"] = gen_duration;
        out["bytes"] = feature_dump_size(t, h, w, gen_d);
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        CLI::App dummy;
        return dummy.exit(e) == 0 ? 0 : 1;
    } catch (const vtok::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const vtok::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const vtok::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
