#include "vtok/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "io_util.hpp"
#include "vtok/codec.hpp"
#include "vtok/errors.hpp"

namespace vtok {

using nlohmann::json;

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// FNV-1a over a byte string, for platform-stable mock scores.
uint64_t fnv1a(const std::string& bytes, uint64_t seed) {
    uint64_t h = 1469598103934665603ull ^ seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

double checked_score(const SimilarityScorer& scorer, const RegionRef& region,
                     const std::string& text) {
    double s = 0.0;
    try {
        s = scorer.score(region, text);
    } catch (const std::exception& e) {
        throw PipelineError(std::string("similarity scorer failed: ") + e.what());
    }
    if (!std::isfinite(s) || s < -1.0 || s > 1.0) {
        throw PipelineError("similarity scorer returned " + std::to_string(s) +
                            ", outside [-1, 1]");
    }
    return s;
}

} // namespace

uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

void FilterConfig::validate() const {
    if (!(max_bbox_area_ratio > 0.0) || max_bbox_area_ratio > 1.0) {
        throw ValidationError("max_bbox_area_ratio must lie in (0, 1]");
    }
    if (min_similarity < -1.0 || min_similarity > 1.0) {
        throw ValidationError("min_similarity must lie in [-1, 1]");
    }
    if (!(max_trajectory_area_drift > 0.0)) {
        throw ValidationError("max_trajectory_area_drift must be positive");
    }
}

double LookupScorer::score(const RegionRef& region, const std::string& text) const {
    auto it = table_.find(key(region.video_id, text));
    return it != table_.end() ? it->second : fallback_;
}

std::string LookupScorer::key(const std::string& video_id, const std::string& text) {
    return video_id + "|" + text;
}

double SeededScorer::score(const RegionRef& region, const std::string& text) const {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "|%.6f|%.6f|%.6f|%.6f|%.6f|", region.timestamp,
                  region.box.x1, region.box.y1, region.box.x2, region.box.y2);
    const uint64_t h = fnv1a(region.video_id + buf + text, mix64(seed_));
    // map to [-1, 1] with ~1e-6 granularity
    return static_cast<double>(h % 2000001ull) / 1000000.0 - 1.0;
}

std::vector<std::string> filter_categories(const std::vector<std::string>& tags,
                                           const FilterConfig& cfg) {
    std::vector<std::string> deny;
    deny.reserve(cfg.static_category_denylist.size());
    for (const std::string& s : cfg.static_category_denylist) {
        deny.push_back(lower(s));
    }
    std::vector<std::string> out;
    out.reserve(tags.size());
    for (const std::string& tag : tags) {
        if (std::find(deny.begin(), deny.end(), lower(tag)) == deny.end()) {
            out.push_back(tag);
        }
    }
    return out;
}

FilterDecision filter_bbox(const PixelBox& box, double frame_w, double frame_h,
                           const std::string& category, const SimilarityScorer& scorer,
                           const FilterConfig& cfg, const std::string& video_id,
                           double timestamp) {
    cfg.validate();
    const double ratio = box.area() / (frame_w * frame_h);
    if (ratio > cfg.max_bbox_area_ratio) {
        return kRejectTooLarge;
    }
    const double s = checked_score(scorer, RegionRef{video_id, timestamp, box}, category);
    if (s < cfg.min_similarity) {
        return kRejectLowSimilarity;
    }
    return std::nullopt;
}

FilterDecision filter_trajectory(const TrajectoryRecord& r, const SimilarityScorer& scorer,
                                 const FilterConfig& cfg) {
    cfg.validate();
    const double a1 = r.bbox1.area();
    const double a2 = r.bbox2.area();
    if (!(a1 > 0.0) || !(a2 > 0.0)) {
        throw ValidationError("trajectory boxes must have positive area");
    }
    const double drift = std::max(a1, a2) / std::min(a1, a2);
    if (drift > cfg.max_trajectory_area_drift) {
        return kRejectAreaDrift;
    }
    const double s1 = checked_score(scorer, RegionRef{r.video_id, r.t1, r.bbox1}, r.category);
    const double s2 = checked_score(scorer, RegionRef{r.video_id, r.t2, r.bbox2}, r.category);
    if (std::min(s1, s2) < cfg.min_similarity) {
        return kRejectLowSimilarity;
    }
    return std::nullopt;
}

FilterDecision filter_record(const TrajectoryRecord& r, const SimilarityScorer& scorer,
                             const FilterConfig& cfg) {
    const std::string cat = lower(r.category);
    for (const std::string& denied : cfg.static_category_denylist) {
        if (lower(denied) == cat) {
            return kRejectStaticCategory;
        }
    }
    if (auto rej = filter_bbox(r.bbox1, r.frame_width, r.frame_height, r.category, scorer, cfg,
                               r.video_id, r.t1)) {
        return rej;
    }
    return filter_trajectory(r, scorer, cfg);
}

std::string render_box_text(const QuantizedBox& qb, const SampleRenderConfig& cfg) {
    std::ostringstream os;
    os << cfg.box_open << render_position_text(qb.x1) << cfg.box_separator
       << render_position_text(qb.y1) << cfg.box_separator << render_position_text(qb.x2)
       << cfg.box_separator << render_position_text(qb.y2) << cfg.box_close;
    return os.str();
}

namespace {

std::string render_time_text(double t, double duration_s, const SampleRenderConfig& cfg) {
    if (cfg.quantize_times) {
        return render_position_text(quantize_time(t, duration_s, cfg.time_resolution).z);
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", t);
    return buf;
}

void replace_all(std::string& text, const std::string& needle, const std::string& repl) {
    size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        text.replace(pos, needle.size(), repl);
        pos += repl.size();
    }
}

const std::array<const char*, 5> kPlaceholders = {"<dynamic caption>", "<t1>", "<t2>", "<bbox1>",
                                                  "<bbox2>"};

} // namespace

InstructionSample build_sample(const TrajectoryRecord& r, TaskKind task, int template_id,
                               const SampleRenderConfig& render_cfg,
                               const TemplatePack& templates) {
    r.validate();
    std::string prompt = templates.prompt(task, template_id);

    const std::string t1_text = render_time_text(r.t1, r.duration_s, render_cfg);
    const std::string t2_text = render_time_text(r.t2, r.duration_s, render_cfg);
    const QuantizedBox qb1 = quantize_box(r.bbox1, r.frame_width, r.frame_height,
                                          render_cfg.w_resolution, render_cfg.h_resolution);
    const QuantizedBox qb2 = quantize_box(r.bbox2, r.frame_width, r.frame_height,
                                          render_cfg.w_resolution, render_cfg.h_resolution);
    const std::string box1_text = render_box_text(qb1, render_cfg);
    const std::string box2_text = render_box_text(qb2, render_cfg);

    // Caption last, so caption text can never be re-substituted.
    replace_all(prompt, "<t1>", t1_text);
    replace_all(prompt, "<t2>", t2_text);
    replace_all(prompt, "<bbox1>", box1_text);
    replace_all(prompt, "<bbox2>", box2_text);
    replace_all(prompt, "<dynamic caption>", r.dynamic_caption);

    for (const char* ph : kPlaceholders) {
        if (prompt.find(ph) != std::string::npos) {
            throw ValidationError(std::string("prompt still contains placeholder ") + ph);
        }
    }

    std::string response;
    switch (task) {
        case TaskKind::SpatialGrounding:
            response = box1_text + render_cfg.interval_joiner + box2_text;
            break;
        case TaskKind::TemporalGrounding:
            response = t1_text + render_cfg.interval_joiner + t2_text;
            break;
        case TaskKind::InstanceDynamicCaptioning:
            response = r.dynamic_caption;
            break;
    }
    if (response.empty()) {
        throw ValidationError("empty response (record '" + r.video_id +
                              "' has no dynamic caption)");
    }

    return InstructionSample{r.video_id, task, template_id, std::move(prompt),
                             std::move(response)};
}

std::pair<TaskKind, int> draw_task_and_template(
    uint64_t seed, uint64_t ordinal, const std::array<uint64_t, kTaskKindCount>& weights) {
    const uint64_t total = weights[0] + weights[1] + weights[2];
    if (total == 0) {
        throw ValidationError("task weights must not all be zero");
    }
    const uint64_t x = mix64(seed ^ mix64(ordinal + 1));
    const uint64_t r = x % total;
    TaskKind task = TaskKind::InstanceDynamicCaptioning;
    if (r < weights[0]) {
        task = TaskKind::SpatialGrounding;
    } else if (r < weights[0] + weights[1]) {
        task = TaskKind::TemporalGrounding;
    }
    const int template_id = static_cast<int>(mix64(x) % kTemplatesPerTask) + 1;
    return {task, template_id};
}

uint64_t BuildReport::rejected() const {
    uint64_t n = 0;
    for (const auto& [reason, count] : rejected_by_reason) {
        n += count;
    }
    return n;
}

std::string BuildReport::to_json() const {
    json j;
    j["total"] = total;
    j["accepted"] = accepted;
    json rej = json::object();
    for (const auto& [reason, count] : rejected_by_reason) {
        rej[reason] = count;
    }
    j["rejected"] = rej;
    json per = json::object();
    for (int t = 0; t < kTaskKindCount; ++t) {
        per[to_string(static_cast<TaskKind>(t))] = per_task[static_cast<size_t>(t)];
    }
    j["per_task"] = per;
    return j.dump(2);
}

BuildResult build_dataset(const std::vector<TrajectoryRecord>& records, const BuildConfig& cfg,
                          const SimilarityScorer& scorer, uint64_t seed) {
    cfg.filters.validate();
    const size_t n = records.size();

    struct Slot {
        std::vector<InstructionSample> samples;
        std::string reject_reason; // empty = accepted
    };
    std::vector<Slot> slots(n);

#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        const size_t idx = static_cast<size_t>(i);
        const TrajectoryRecord& r = records[idx];
        Slot& slot = slots[idx];
        try {
            if (auto rej = filter_record(r, scorer, cfg.filters)) {
                slot.reject_reason = *rej;
            } else {
                const auto [task, template_id] =
                    draw_task_and_template(seed, static_cast<uint64_t>(idx), cfg.task_weights);
                if (cfg.emit_all_tasks) {
                    for (int t = 0; t < kTaskKindCount; ++t) {
                        slot.samples.push_back(
                            build_sample(r, static_cast<TaskKind>(t), template_id, cfg.render));
                    }
                } else {
                    slot.samples.push_back(build_sample(r, task, template_id, cfg.render));
                }
            }
        } catch (const ValidationError&) {
            slot.samples.clear();
            slot.reject_reason = kRejectInvalidRecord;
        }
    }

    BuildResult out;
    out.report.total = n;
    for (Slot& slot : slots) {
        if (slot.reject_reason.empty()) {
            out.report.accepted += 1;
            for (InstructionSample& s : slot.samples) {
                out.report.per_task[static_cast<size_t>(s.task)] += 1;
                out.samples.push_back(std::move(s));
            }
        } else {
            out.report.rejected_by_reason[slot.reject_reason] += 1;
        }
    }
    return out;
}

std::string samples_to_jsonl(const std::vector<InstructionSample>& samples) {
    std::ostringstream os;
    for (const InstructionSample& s : samples) {
        json j{{"video_id", s.video_id},
               {"task", to_string(s.task)},
               {"template_id", s.template_id},
               {"prompt", s.prompt},
               {"response", s.response}};
        os << j.dump() << "\n";
    }
    return os.str();
}

void write_samples(const std::vector<InstructionSample>& samples, const std::string& path) {
    const std::string body = samples_to_jsonl(samples);
    detail::atomic_write(path, [&](std::ofstream& out) { out << body; });
}

int Histogram::bin_of(double value) const {
    return static_cast<int>(std::floor(value / bin_width));
}

namespace {

Histogram make_histogram(const std::vector<double>& values, double bin_width) {
    Histogram h;
    h.bin_width = bin_width;
    h.total = values.size();
    double sum = 0.0;
    for (double v : values) {
        const int bin = static_cast<int>(std::floor(v / bin_width));
        if (bin >= static_cast<int>(h.counts.size())) {
            h.counts.resize(static_cast<size_t>(bin) + 1, 0);
        }
        h.counts[static_cast<size_t>(bin)] += 1;
        sum += v;
    }
    h.mean = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
    return h;
}

json histogram_to_json(const Histogram& h) {
    json bins = json::array();
    for (size_t i = 0; i < h.counts.size(); ++i) {
        bins.push_back(json{{"lo", static_cast<double>(i) * h.bin_width},
                            {"hi", static_cast<double>(i + 1) * h.bin_width},
                            {"count", h.counts[i]}});
    }
    return json{{"mean", h.mean}, {"total", h.total}, {"bins", bins}};
}

} // namespace

std::string StatsReport::to_json() const {
    json j;
    j["record_count"] = record_count;
    j["bin_width_s"] = duration.bin_width;
    j["duration"] = histogram_to_json(duration);
    j["interval"] = histogram_to_json(interval);
    json per = json::object();
    for (int t = 0; t < kTaskKindCount; ++t) {
        per[to_string(static_cast<TaskKind>(t))] = per_task[static_cast<size_t>(t)];
    }
    j["per_task"] = per;
    return j.dump(2);
}

StatsReport dataset_stats(const std::vector<TrajectoryRecord>& records, double bin_width_s) {
    if (!(bin_width_s > 0.0)) {
        throw ValidationError("bin width must be positive");
    }
    std::vector<double> durations, intervals;
    durations.reserve(records.size());
    intervals.reserve(records.size());
    for (const TrajectoryRecord& r : records) {
        durations.push_back(r.duration_s);
        intervals.push_back(r.t2 - r.t1);
    }
    StatsReport rep;
    rep.record_count = records.size();
    rep.duration = make_histogram(durations, bin_width_s);
    rep.interval = make_histogram(intervals, bin_width_s);
    return rep;
}

void add_task_totals(StatsReport& report, const std::vector<InstructionSample>& samples) {
    for (const InstructionSample& s : samples) {
        report.per_task[static_cast<size_t>(s.task)] += 1;
    }
}

} // namespace vtok
