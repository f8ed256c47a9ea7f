#include "vtok/reference.hpp"

#include <algorithm>
#include <cmath>

#include "vtok/errors.hpp"

namespace vtok::ref {

double cosine_similarity_serial(const FrameFeatureMap& a, const FrameFeatureMap& b) {
    if (a.data.size() != b.data.size()) {
        throw ValidationError("reference cosine: size mismatch");
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        dot += a.data[i] * b.data[i];
        na += a.data[i] * a.data[i];
        nb += b.data[i] * b.data[i];
    }
    na = std::sqrt(na);
    nb = std::sqrt(nb);
    if (na <= 1e-12 || nb <= 1e-12) {
        throw DegenerateFeatureError("reference cosine: zero-norm vector");
    }
    double s = dot / (na * nb);
    if (s > 1.0) s = 1.0;
    if (s < -1.0) s = -1.0;
    return s;
}

std::vector<double> similarity_series_serial(const VideoFeatures& v) {
    std::vector<double> out;
    for (size_t i = 0; i + 1 < v.frames.size(); ++i) {
        out.push_back(cosine_similarity_serial(v.frames[i], v.frames[i + 1]));
    }
    return out;
}

std::vector<double> change_rate_serial(const std::vector<double>& similarities) {
    std::vector<double> out;
    for (size_t i = 1; i < similarities.size(); ++i) {
        out.push_back(std::fabs(similarities[i] - similarities[i - 1]));
    }
    return out;
}

std::vector<int> segment_events_serial(const VideoFeatures& v, int k) {
    const int t = static_cast<int>(v.frames.size());
    if (k == 1) {
        return {1};
    }
    const std::vector<double> d = change_rate_serial(similarity_series_serial(v));

    // candidates are frames 2..T-1, paired with their rates
    std::vector<std::pair<double, int>> cand;
    for (int i = 2; i <= t - 1; ++i) {
        cand.emplace_back(d[static_cast<size_t>(i) - 2], i);
    }
    std::stable_sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    std::vector<int> starts = {1};
    for (int i = 0; i < k - 1; ++i) {
        starts.push_back(cand[static_cast<size_t>(i)].second);
    }
    std::sort(starts.begin(), starts.end());
    return starts;
}

std::vector<double> pool_frame_serial(const FrameFeatureMap& f, int stride) {
    const int oh = f.h / stride;
    const int ow = f.w / stride;
    std::vector<double> out(static_cast<size_t>(oh) * ow * f.d);
    for (int orow = 0; orow < oh; ++orow) {
        for (int ocol = 0; ocol < ow; ++ocol) {
            for (int ch = 0; ch < f.d; ++ch) {
                double sum = 0.0;
                for (int rr = 0; rr < stride; ++rr) {
                    for (int cc = 0; cc < stride; ++cc) {
                        sum += f.at(orow * stride + rr, ocol * stride + cc, ch);
                    }
                }
                out[(static_cast<size_t>(orow) * ow + ocol) * f.d + ch] =
                    sum / (static_cast<double>(stride) * stride);
            }
        }
    }
    return out;
}

} // namespace vtok::ref
