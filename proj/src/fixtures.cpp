#include "vtok/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "vtok/dataset.hpp"
#include "vtok/errors.hpp"

namespace vtok::fixtures {

namespace {

// timestamps at segment midpoints: strictly increasing, last < duration
void fill_timestamps(VideoFeatures& v) {
    const int t = v.frame_count();
    for (int i = 0; i < t; ++i) {
        v.frames[static_cast<size_t>(i)].frame_index = i;
        v.frames[static_cast<size_t>(i)].timestamp =
            (static_cast<double>(i) + 0.5) * v.duration_s / static_cast<double>(t);
    }
}

VideoFeatures make_shell(int t, int h, int w, int d, double duration_s,
                         const std::string& video_id) {
    if (t < 1 || h < 1 || w < 1 || d < 1 || !(duration_s > 0)) {
        throw ValidationError("fixture: invalid dimensions");
    }
    VideoFeatures v;
    v.video_id = video_id;
    v.duration_s = duration_s;
    v.frames.resize(static_cast<size_t>(t));
    for (auto& f : v.frames) {
        f.h = h;
        f.w = w;
        f.d = d;
        f.data.assign(static_cast<size_t>(h) * w * d, 0.0);
    }
    fill_timestamps(v);
    return v;
}

} // namespace

VideoFeatures make_constant_video(int t, int h, int w, int d, double duration_s, double value) {
    VideoFeatures v = make_shell(t, h, w, d, duration_s, "constant");
    for (auto& f : v.frames) {
        std::fill(f.data.begin(), f.data.end(), value);
    }
    v.validate();
    return v;
}

VideoFeatures make_two_block_video(int t, int h, int w, int d, double duration_s) {
    if (static_cast<long long>(h) * w * d < 2) {
        throw ValidationError("two-block fixture needs h*w*d >= 2");
    }
    VideoFeatures v = make_shell(t, h, w, d, duration_s, "two-block");
    const int first_block = (t + 1) / 2;
    for (int i = 0; i < t; ++i) {
        auto& data = v.frames[static_cast<size_t>(i)].data;
        const size_t parity = (i < first_block) ? 0 : 1;
        for (size_t j = parity; j < data.size(); j += 2) {
            data[j] = 1.0;
        }
    }
    v.validate();
    return v;
}

VideoFeatures make_random_video(int t, int h, int w, int d, double duration_s, uint64_t seed) {
    VideoFeatures v = make_shell(t, h, w, d, duration_s, "random");
    uint64_t ctr = mix64(seed);
    for (auto& f : v.frames) {
        for (double& x : f.data) {
            ctr = mix64(ctr);
            // f32-representable value in [-1, 1)
            x = static_cast<float>(static_cast<double>(ctr >> 11) * 0x1.0p-52 * 2.0 - 1.0);
        }
        // rule out a degenerate frame
        double norm2 = 0.0;
        for (double x : f.data) norm2 += x * x;
        if (norm2 < 1e-6) {
            f.data[0] = 1.0;
        }
    }
    v.validate();
    return v;
}

std::vector<TrajectoryRecord> make_random_trajectories(int n, uint64_t seed) {
    static const char* kCategories[] = {"dog", "cat", "car", "person", "ball",
                                        "bird", "sky", "road", "cloud", "bicycle"};
    static const char* kMotions[] = {"running across the yard", "rolling toward the camera",
                                     "moving slowly to the left", "jumping over an obstacle",
                                     "drifting to the right edge", "circling the open area"};
    std::vector<TrajectoryRecord> out;
    out.reserve(static_cast<size_t>(n));
    uint64_t ctr = mix64(seed ^ 0xA5A5A5A5ull);
    auto next_unit = [&]() {
        ctr = mix64(ctr);
        return static_cast<double>(ctr >> 11) * 0x1.0p-52; // [0, 1)
    };
    for (int i = 0; i < n; ++i) {
        TrajectoryRecord r;
        r.video_id = "vid" + std::to_string(i);
        r.duration_s = 5.0 + next_unit() * 295.0;
        r.frame_width = 1280.0;
        r.frame_height = 720.0;
        const size_t cat = static_cast<size_t>(next_unit() * std::size(kCategories));
        r.category = kCategories[cat];
        const size_t motion = static_cast<size_t>(next_unit() * std::size(kMotions));
        r.static_caption = std::string("a ") + r.category;
        r.dynamic_caption = std::string("a ") + r.category + " " + kMotions[motion];
        r.t1 = next_unit() * r.duration_s * 0.5;
        r.t2 = r.t1 + 0.5 + next_unit() * (r.duration_s - r.t1 - 0.5);
        if (r.t2 > r.duration_s) r.t2 = r.duration_s;

        // box sizes span tiny to full-frame so the size and drift gates both fire
        auto make_box = [&](double scale) {
            const double bw = std::max(4.0, scale * r.frame_width);
            const double bh = std::max(4.0, scale * r.frame_height);
            const double x1 = next_unit() * (r.frame_width - bw);
            const double y1 = next_unit() * (r.frame_height - bh);
            return PixelBox{x1, y1, x1 + bw, y1 + bh};
        };
        const double s1 = 0.02 + next_unit() * 0.98;
        const double s2 = 0.02 + next_unit() * 0.98;
        r.bbox1 = make_box(s1);
        r.bbox2 = make_box(s2);
        r.validate();
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace vtok::fixtures
