#ifndef VTOK_SEGMENTATION_HPP
#define VTOK_SEGMENTATION_HPP

#include <utility>
#include <vector>

#include "vtok/features.hpp"

namespace vtok {

/// Adjacent-frame cosine similarities S_1..S_{T-1}; values[i-1] is the
/// similarity between frames i and i+1 (1-based).
struct SimilaritySeries {
    std::vector<double> values;

    size_t size() const { return values.size(); }
};

/// Similarity change rates d_2..d_{T-1}; values[i-2] is the rate evaluated at
/// frame i, i.e. |S_{i,i+1} - S_{i-1,i}|. Empty when T < 3.
struct ChangeRateSeries {
    std::vector<double> values;

    size_t size() const { return values.size(); }
    /// Rate at 1-based frame index i, i in [2, T-1].
    double at_frame(int i) const { return values[static_cast<size_t>(i) - 2]; }
};

/// A contiguous partition of frames 1..T into K events.
struct EventSegmentation {
    std::vector<int> event_starts; ///< sorted 1-based starts; first is 1; empty only for K=0 layouts
    int total_frames = 0;

    int event_count() const { return static_cast<int>(event_starts.size()); }

    /// Derived inclusive ranges [start_k, start_{k+1} - 1].
    std::vector<std::pair<int, int>> events() const;

    bool is_event_start(int frame_1based) const;

    /// Validates the partition structure against total_frames.
    static EventSegmentation from_starts(std::vector<int> starts, int total_frames);

    bool operator==(const EventSegmentation&) const = default;
};

/// Cosine similarity over the flattened (h*w*d) vectors, accumulated in
/// double, clamped to [-1, 1]. Shape mismatch -> ValidationError; a vector
/// with norm <= 1e-12 -> DegenerateFeatureError.
double cosine_similarity(const FrameFeatureMap& a, const FrameFeatureMap& b);

/// Adjacent-pair similarities for the whole video (needs T >= 2). The pair
/// loop runs under OpenMP; each element is computed independently, so results
/// are identical across thread counts.
SimilaritySeries similarity_series(const VideoFeatures& v);

/// d_i = |S_{i,i+1} - S_{i-1,i}| for i = 2..T-1 (needs T >= 3).
ChangeRateSeries change_rate_series(const SimilaritySeries& s);

/// Splits the video into K events. Event starts are frame 1 plus the K-1
/// candidate frames i in [2, T-1] with the largest change rate d_i; ties are
/// broken toward the smaller index. A selected index i opens a new event at
/// frame i. K = 1 yields the whole video as one event. Infeasible K (more
/// boundaries than candidates) -> ValidationError naming the maximum.
EventSegmentation segment_events(const VideoFeatures& v, int k);

/// Largest K accepted by segment_events for a video of T frames.
int max_feasible_events(int total_frames);

} // namespace vtok

#endif
