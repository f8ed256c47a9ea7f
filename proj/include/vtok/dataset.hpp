#ifndef VTOK_DATASET_HPP
#define VTOK_DATASET_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vtok/features.hpp"
#include "vtok/templates.hpp"

namespace vtok {

/// One training pair in the instruction-sample JSONL format.
struct InstructionSample {
    std::string video_id;
    TaskKind task = TaskKind::SpatialGrounding;
    int template_id = 1; ///< 1..8
    std::string prompt;
    std::string response;

    bool operator==(const InstructionSample&) const = default;
};

/// Thresholds for the annotation filter chain. The numeric defaults are
/// project choices (the upstream procedure tuned them by hand) and are meant
/// to be overridden from config.
struct FilterConfig {
    std::vector<std::string> static_category_denylist = {"cloud", "sky", "road", "room"};
    double max_bbox_area_ratio = 0.9; ///< fraction of frame area, (0, 1]
    double min_similarity = 0.2; ///< inclusive acceptance threshold, [-1, 1]
    double max_trajectory_area_drift = 4.0; ///< max(area)/min(area) bound, > 0

    void validate() const;
};

/// Identifies an image region for scoring: the video, a timestamp, and a box.
struct RegionRef {
    std::string video_id;
    double timestamp = 0.0;
    PixelBox box;
};

/// Region-text similarity oracle. Implementations must be deterministic for
/// fixed inputs and return scores in [-1, 1]. The real scorer is an external
/// model; this repository ships mock implementations for testing the chain.
class SimilarityScorer {
public:
    virtual ~SimilarityScorer() = default;
    virtual double score(const RegionRef& region, const std::string& text) const = 0;
};

/// Always returns the same score.
class ConstantScorer final : public SimilarityScorer {
public:
    explicit ConstantScorer(double value) : value_(value) {}
    double score(const RegionRef&, const std::string&) const override { return value_; }

private:
    double value_;
};

/// Scores from a "video_id|text" table with a fallback default.
class LookupScorer final : public SimilarityScorer {
public:
    LookupScorer(std::map<std::string, double> table, double fallback)
        : table_(std::move(table)), fallback_(fallback) {}
    double score(const RegionRef& region, const std::string& text) const override;

    static std::string key(const std::string& video_id, const std::string& text);

private:
    std::map<std::string, double> table_;
    double fallback_;
};

/// Deterministic pseudo-random scores in [-1, 1] from a platform-stable hash
/// of (seed, video_id, box, text).
class SeededScorer final : public SimilarityScorer {
public:
    explicit SeededScorer(uint64_t seed) : seed_(seed) {}
    double score(const RegionRef& region, const std::string& text) const override;

private:
    uint64_t seed_;
};

// --------------------------------------------------------------------------
// Filter chain
// --------------------------------------------------------------------------

inline constexpr const char* kRejectStaticCategory = "static_category";
inline constexpr const char* kRejectTooLarge = "too_large";
inline constexpr const char* kRejectLowSimilarity = "low_similarity";
inline constexpr const char* kRejectAreaDrift = "area_drift";
inline constexpr const char* kRejectInvalidRecord = "invalid_record";

/// Accept (empty) or a single reject reason.
using FilterDecision = std::optional<std::string>;

/// Removes denylisted tags (case-insensitive exact match), preserving order.
std::vector<std::string> filter_categories(const std::vector<std::string>& tags,
                                           const FilterConfig& cfg);

/// Box gate: reject "too_large" when area/frame-area exceeds the ratio bound,
/// then "low_similarity" when the scorer falls below min_similarity
/// (threshold inclusive: a score equal to min_similarity passes).
FilterDecision filter_bbox(const PixelBox& box, double frame_w, double frame_h,
                           const std::string& category, const SimilarityScorer& scorer,
                           const FilterConfig& cfg, const std::string& video_id = {},
                           double timestamp = 0.0);

/// Trajectory gate: reject "area_drift" when the endpoint box areas differ by
/// more than the drift bound, then "low_similarity" on the worse of the two
/// endpoint scores.
FilterDecision filter_trajectory(const TrajectoryRecord& r, const SimilarityScorer& scorer,
                                 const FilterConfig& cfg);

/// Full per-record chain in upstream order: category denylist, initial-box
/// gate on bbox1, trajectory gate. First failure wins.
FilterDecision filter_record(const TrajectoryRecord& r, const SimilarityScorer& scorer,
                             const FilterConfig& cfg);

// --------------------------------------------------------------------------
// Sample construction
// --------------------------------------------------------------------------

/// Text-rendering knobs for substituted values. Times and coordinates are
/// rendered as bare quantized integers by default; quantize_times = false
/// switches t1/t2 to raw seconds.
struct SampleRenderConfig {
    int time_resolution = 300; ///< Z
    int w_resolution = 1000; ///< W_hat
    int h_resolution = 1000; ///< H_hat
    bool quantize_times = true;
    std::string box_open = "[";
    std::string box_separator = ", ";
    std::string box_close = "]";
    std::string interval_joiner = " to ";
};

/// Renders a quantized box as text, e.g. "[250, 250, 750, 750]".
std::string render_box_text(const struct QuantizedBox& qb, const SampleRenderConfig& cfg);

/// Instantiates the (task, template_id) prompt from a record: the dynamic
/// caption verbatim, times and boxes as rendered position tokens. Responses:
/// spatial grounding -> the two boxes, temporal grounding -> the interval,
/// instance dynamic captioning -> the dynamic caption. The returned prompt
/// contains no residual placeholder.
InstructionSample build_sample(const TrajectoryRecord& r, TaskKind task, int template_id,
                               const SampleRenderConfig& render_cfg = {},
                               const TemplatePack& templates = TemplatePack::builtin());

// --------------------------------------------------------------------------
// Dataset build
// --------------------------------------------------------------------------

struct BuildConfig {
    FilterConfig filters;
    SampleRenderConfig render;
    /// Task draw weights in TaskKind order; defaults proportional to the
    /// dataset's per-task object counts.
    std::array<uint64_t, kTaskKindCount> task_weights = {51992, 21328, 41385};
    /// When true, every accepted record yields one sample per task instead of
    /// a single drawn task.
    bool emit_all_tasks = false;
};

struct BuildReport {
    uint64_t total = 0;
    uint64_t accepted = 0;
    std::map<std::string, uint64_t> rejected_by_reason;
    std::array<uint64_t, kTaskKindCount> per_task = {0, 0, 0};

    uint64_t rejected() const;
    std::string to_json() const;
};

struct BuildResult {
    std::vector<InstructionSample> samples;
    BuildReport report;
};

/// The documented task/template draw for record `ordinal` (0-based input
/// position, counting every record whether or not it is accepted):
///   x = mix64(seed ^ mix64(ordinal + 1))
///   task from x mod sum(weights), cumulative in TaskKind order
///   template_id = 1 + (mix64(x) mod 8)
/// where mix64 is the splitmix64 finalizer. Pure integer arithmetic, so the
/// draw is reproducible across platforms.
std::pair<TaskKind, int> draw_task_and_template(uint64_t seed, uint64_t ordinal,
                                                const std::array<uint64_t, kTaskKindCount>& weights);

/// splitmix64 finalizer used by draw_task_and_template and the mock scorer.
uint64_t mix64(uint64_t x);

/// Runs the filter chain and sample construction over all records. Record
/// processing is parallel (OpenMP); sample order always follows input order
/// and the result is a pure function of (records, cfg, scorer, seed).
BuildResult build_dataset(const std::vector<TrajectoryRecord>& records, const BuildConfig& cfg,
                          const SimilarityScorer& scorer, uint64_t seed);

/// Serializes samples as JSONL ({video_id, task, template_id, prompt,
/// response} per line, atomic write).
void write_samples(const std::vector<InstructionSample>& samples, const std::string& path);
std::string samples_to_jsonl(const std::vector<InstructionSample>& samples);

// --------------------------------------------------------------------------
// Dataset statistics
// --------------------------------------------------------------------------

struct Histogram {
    double bin_width = 0.0;
    std::vector<uint64_t> counts; ///< bin i covers [i*bin_width, (i+1)*bin_width)
    uint64_t total = 0;
    double mean = 0.0;

    int bin_of(double value) const;
};

struct StatsReport {
    uint64_t record_count = 0;
    Histogram duration;
    Histogram interval; ///< t2 - t1
    std::array<uint64_t, kTaskKindCount> per_task = {0, 0, 0}; ///< filled from samples when given

    std::string to_json() const;
};

/// Duration and interval histograms over records; bin_width_s must be > 0.
StatsReport dataset_stats(const std::vector<TrajectoryRecord>& records, double bin_width_s);

/// Adds per-task totals from built samples to a report.
void add_task_totals(StatsReport& report, const std::vector<InstructionSample>& samples);

} // namespace vtok

#endif
