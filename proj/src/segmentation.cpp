#include "vtok/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vtok/errors.hpp"

namespace vtok {

namespace {

constexpr double kNormEps = 1e-12;

double squared_norm(const FrameFeatureMap& f) {
    double acc = 0.0;
    for (double v : f.data) {
        acc += v * v;
    }
    return acc;
}

double dot(const FrameFeatureMap& a, const FrameFeatureMap& b) {
    double acc = 0.0;
    const size_t n = a.data.size();
    for (size_t i = 0; i < n; ++i) {
        acc += a.data[i] * b.data[i];
    }
    return acc;
}

double clamp_unit(double x) {
    return std::min(1.0, std::max(-1.0, x));
}

} // namespace

double cosine_similarity(const FrameFeatureMap& a, const FrameFeatureMap& b) {
    if (a.h != b.h || a.w != b.w || a.d != b.d || a.data.size() != b.data.size()) {
        throw ValidationError("cosine_similarity: feature shapes differ");
    }
    const double na = std::sqrt(squared_norm(a));
    const double nb = std::sqrt(squared_norm(b));
    if (na <= kNormEps || nb <= kNormEps) {
        throw DegenerateFeatureError("cosine_similarity: feature vector has near-zero norm");
    }
    return clamp_unit(dot(a, b) / (na * nb));
}

SimilaritySeries similarity_series(const VideoFeatures& v) {
    const int t = v.frame_count();
    if (t < 2) {
        throw ValidationError("similarity_series: need at least 2 frames, got " +
                              std::to_string(t));
    }

    // Norms first so degenerate frames are reported before any pair work.
    std::vector<double> norms(static_cast<size_t>(t));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < t; ++i) {
        norms[static_cast<size_t>(i)] = std::sqrt(squared_norm(v.frames[static_cast<size_t>(i)]));
    }
    for (int i = 0; i < t; ++i) {
        if (norms[static_cast<size_t>(i)] <= kNormEps) {
            throw DegenerateFeatureError("frame " + std::to_string(i + 1) +
                                         " has near-zero feature norm");
        }
    }

    SimilaritySeries s;
    s.values.resize(static_cast<size_t>(t) - 1);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < t - 1; ++i) {
        const size_t idx = static_cast<size_t>(i);
        s.values[idx] = clamp_unit(dot(v.frames[idx], v.frames[idx + 1]) /
                                   (norms[idx] * norms[idx + 1]));
    }
    return s;
}

ChangeRateSeries change_rate_series(const SimilaritySeries& s) {
    if (s.values.size() < 2) {
        throw ValidationError("change_rate_series: need at least 2 similarities (T >= 3), got " +
                              std::to_string(s.values.size()));
    }
    ChangeRateSeries d;
    d.values.resize(s.values.size() - 1);
    for (size_t i = 0; i + 1 < s.values.size(); ++i) {
        d.values[i] = std::fabs(s.values[i + 1] - s.values[i]);
    }
    return d;
}

std::vector<std::pair<int, int>> EventSegmentation::events() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(event_starts.size());
    for (size_t k = 0; k < event_starts.size(); ++k) {
        const int start = event_starts[k];
        const int end = (k + 1 < event_starts.size()) ? event_starts[k + 1] - 1 : total_frames;
        out.emplace_back(start, end);
    }
    return out;
}

bool EventSegmentation::is_event_start(int frame_1based) const {
    return std::binary_search(event_starts.begin(), event_starts.end(), frame_1based);
}

EventSegmentation EventSegmentation::from_starts(std::vector<int> starts, int total_frames) {
    if (total_frames < 1) {
        throw ValidationError("segmentation needs at least 1 frame");
    }
    if (!starts.empty()) {
        if (starts.front() != 1) {
            throw ValidationError("first event must start at frame 1");
        }
        for (size_t i = 0; i < starts.size(); ++i) {
            if (starts[i] < 1 || starts[i] > total_frames) {
                throw ValidationError("event start out of range");
            }
            if (i > 0 && starts[i] <= starts[i - 1]) {
                throw ValidationError("event starts must be strictly increasing");
            }
        }
    }
    return EventSegmentation{std::move(starts), total_frames};
}

int max_feasible_events(int total_frames) {
    return std::max(1, total_frames - 1);
}

EventSegmentation segment_events(const VideoFeatures& v, int k) {
    const int t = v.frame_count();
    if (t < 1) {
        throw ValidationError("segment_events: empty video");
    }
    if (k < 1) {
        throw ValidationError("segment_events: K must be >= 1, got " + std::to_string(k));
    }
    if (k == 1) {
        return EventSegmentation::from_starts({1}, t);
    }
    // K-1 boundaries must come from the T-2 candidate frames [2, T-1].
    if (k - 1 > t - 2 || k > t) {
        throw ValidationError("segment_events: infeasible K=" + std::to_string(k) + " for T=" +
                              std::to_string(t) + "; max feasible K is " +
                              std::to_string(max_feasible_events(t)));
    }

    const SimilaritySeries s = similarity_series(v);
    const ChangeRateSeries d = change_rate_series(s);

    // Candidate frame i has rate d.values[i-2]; rank by value desc, index asc.
    std::vector<int> order(d.values.size());
    std::iota(order.begin(), order.end(), 2);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double da = d.at_frame(a), db = d.at_frame(b);
        if (da != db) return da > db;
        return a < b;
    });

    std::vector<int> starts(order.begin(), order.begin() + (k - 1));
    starts.push_back(1);
    std::sort(starts.begin(), starts.end());
    return EventSegmentation::from_starts(std::move(starts), t);
}

} // namespace vtok
