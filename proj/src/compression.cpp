#include "vtok/compression.hpp"

#include <cstring>
#include <filesystem>
#include <sstream>

#include "io_util.hpp"
#include "vtok/errors.hpp"

namespace vtok {

namespace {

constexpr char kImvcMagic[4] = {'I', 'M', 'V', 'C'};
constexpr uint32_t kImvcVersion = 1;

void check_stride(int h, int w, int stride) {
    if (stride < 1) {
        throw PoolingShapeError("pooling stride must be >= 1, got " + std::to_string(stride));
    }
    if (h % stride != 0 || w % stride != 0) {
        std::ostringstream os;
        os << "stride " << stride << " does not divide feature map " << h << "x" << w;
        throw PoolingShapeError(os.str());
    }
}

std::vector<double> pool_data(const FrameFeatureMap& f, int stride) {
    const int oh = f.h / stride;
    const int ow = f.w / stride;
    std::vector<double> out(static_cast<size_t>(oh) * ow * f.d, 0.0);
    const double inv = 1.0 / (static_cast<double>(stride) * stride);
    for (int r = 0; r < f.h; ++r) {
        const int orow = r / stride;
        for (int c = 0; c < f.w; ++c) {
            const int ocol = c / stride;
            const size_t src = (static_cast<size_t>(r) * f.w + c) * f.d;
            const size_t dst = (static_cast<size_t>(orow) * ow + ocol) * f.d;
            for (int ch = 0; ch < f.d; ++ch) {
                out[dst + ch] += f.data[src + ch];
            }
        }
    }
    for (double& v : out) {
        v *= inv;
    }
    return out;
}

} // namespace

std::vector<double> pool_frame(const FrameFeatureMap& f, int stride) {
    check_stride(f.h, f.w, stride);
    return pool_data(f, stride);
}

int64_t token_budget(int t, int h, int w, int k, int stride, bool include_time_tokens) {
    if (t < 0) {
        throw ValidationError("token_budget: T must be >= 0");
    }
    if (h < 1 || w < 1) {
        throw ValidationError("token_budget: h and w must be >= 1");
    }
    if (k < 0 || k > t) {
        throw ValidationError("token_budget: K must lie in [0, T]");
    }
    check_stride(h, w, stride);
    const int64_t full = static_cast<int64_t>(h) * w;
    const int64_t pooled = static_cast<int64_t>(h / stride) * (w / stride);
    int64_t total = static_cast<int64_t>(k) * full + static_cast<int64_t>(t - k) * pooled;
    if (include_time_tokens) {
        total += t;
    }
    return total;
}

CompressedVideoTokens compress_video(const VideoFeatures& v, int k, int stride,
                                     int time_resolution) {
    v.validate();
    const int t = v.frame_count();
    check_stride(v.h(), v.w(), stride);

    // K = 0 pools every frame; segmentation is skipped entirely.
    EventSegmentation seg = (k == 0)
        ? EventSegmentation::from_starts({}, t)
        : segment_events(v, k);

    CompressedVideoTokens out;
    out.video_id = v.video_id;
    out.duration_s = v.duration_s;
    out.source_h = v.h();
    out.source_w = v.w();
    out.source_d = v.d();
    out.events = k;
    out.stride = stride;
    out.time_resolution = time_resolution;
    out.segmentation = seg;
    out.frames.resize(static_cast<size_t>(t));

#pragma omp parallel for schedule(static)
    for (int i = 0; i < t; ++i) {
        const FrameFeatureMap& src = v.frames[static_cast<size_t>(i)];
        PooledFrame& dst = out.frames[static_cast<size_t>(i)];
        dst.frame_index = i + 1;
        dst.d = src.d;
        if (seg.is_event_start(i + 1)) {
            dst.kind = FrameKind::SpatialRep;
            dst.h = src.h;
            dst.w = src.w;
            dst.data = src.data;
        } else {
            dst.kind = FrameKind::TemporalRep;
            dst.h = src.h / stride;
            dst.w = src.w / stride;
            dst.data = pool_data(src, stride);
        }
        dst.temporal_token = quantize_time(src.timestamp, v.duration_s, time_resolution);
    }

    int64_t visual = 0;
    for (const PooledFrame& f : out.frames) {
        visual += f.visual_token_count();
    }
    out.visual_token_count = visual;
    out.total_token_count_with_time = visual + t;

    const int64_t expected = token_budget(t, v.h(), v.w(), k, stride, false);
    if (visual != expected) {
        throw ValidationError("compress_video: token accounting mismatch (got " +
                              std::to_string(visual) + ", expected " + std::to_string(expected) +
                              ")");
    }
    return out;
}

void write_compressed_dump(const CompressedVideoTokens& c, const std::string& path) {
    detail::atomic_write(path, [&](std::ofstream& out) {
        out.write(kImvcMagic, 4);
        detail::write_raw(out, kImvcVersion);
        detail::write_raw(out, static_cast<uint32_t>(c.frames.size()));
        detail::write_raw(out, static_cast<uint32_t>(c.source_h));
        detail::write_raw(out, static_cast<uint32_t>(c.source_w));
        detail::write_raw(out, static_cast<uint32_t>(c.source_d));
        detail::write_raw(out, c.duration_s);
        detail::write_raw(out, static_cast<uint32_t>(c.events));
        detail::write_raw(out, static_cast<uint32_t>(c.stride));
        detail::write_raw(out, static_cast<uint32_t>(c.time_resolution));
        const char reserved[20] = {};
        out.write(reserved, sizeof(reserved));

        std::vector<float> payload;
        for (const PooledFrame& f : c.frames) {
            detail::write_raw(out, static_cast<uint8_t>(f.kind));
            detail::write_raw(out, static_cast<uint32_t>(f.temporal_token.z));
            payload.assign(f.data.begin(), f.data.end());
            out.write(reinterpret_cast<const char*>(payload.data()),
                      static_cast<std::streamsize>(payload.size() * sizeof(float)));
        }
    });
}

CompressedVideoTokens read_compressed_dump(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open compressed dump: " + path);
    }
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, kImvcMagic, 4) != 0) {
        throw FormatError(path + ": bad magic, not an IMVC file");
    }
    uint32_t version = 0, t = 0, h = 0, w = 0, d = 0, k = 0, stride = 0, z_res = 0;
    double duration = 0.0;
    if (!detail::read_raw(in, version) || !detail::read_raw(in, t) || !detail::read_raw(in, h) ||
        !detail::read_raw(in, w) || !detail::read_raw(in, d) || !detail::read_raw(in, duration) ||
        !detail::read_raw(in, k) || !detail::read_raw(in, stride) || !detail::read_raw(in, z_res)) {
        throw FormatError(path + ": truncated header");
    }
    if (version != kImvcVersion) {
        throw FormatError(path + ": unsupported IMVC version " + std::to_string(version));
    }
    char reserved[20];
    in.read(reserved, sizeof(reserved));
    if (in.gcount() != static_cast<std::streamsize>(sizeof(reserved))) {
        throw FormatError(path + ": truncated header");
    }
    if (t < 1 || h < 1 || w < 1 || d < 1 || stride < 1) {
        throw ValidationError(path + ": inconsistent header dimensions");
    }

    CompressedVideoTokens c;
    c.video_id = std::filesystem::path(path).stem().string();
    c.duration_s = duration;
    c.source_h = static_cast<int>(h);
    c.source_w = static_cast<int>(w);
    c.source_d = static_cast<int>(d);
    c.events = static_cast<int>(k);
    c.stride = static_cast<int>(stride);
    c.time_resolution = static_cast<int>(z_res);
    c.frames.resize(t);

    std::vector<int> starts;
    std::vector<float> payload;
    int64_t visual = 0;
    for (uint32_t i = 0; i < t; ++i) {
        uint8_t kind = 0;
        uint32_t token = 0;
        if (!detail::read_raw(in, kind) || !detail::read_raw(in, token)) {
            throw FormatError(path + ": truncated at frame " + std::to_string(i));
        }
        if (kind > 1) {
            throw FormatError(path + ": unknown frame kind " + std::to_string(kind));
        }
        PooledFrame& f = c.frames[i];
        f.frame_index = static_cast<int>(i) + 1;
        f.kind = static_cast<FrameKind>(kind);
        f.d = static_cast<int>(d);
        if (f.kind == FrameKind::SpatialRep) {
            f.h = static_cast<int>(h);
            f.w = static_cast<int>(w);
            starts.push_back(f.frame_index);
        } else {
            f.h = static_cast<int>(h / stride);
            f.w = static_cast<int>(w / stride);
        }
        f.temporal_token = QuantizedTime{static_cast<int>(token), static_cast<int>(z_res)};
        f.temporal_token.validate();
        const size_t n = static_cast<size_t>(f.h) * f.w * f.d;
        payload.resize(n);
        in.read(reinterpret_cast<char*>(payload.data()),
                static_cast<std::streamsize>(n * sizeof(float)));
        if (in.gcount() != static_cast<std::streamsize>(n * sizeof(float))) {
            throw FormatError(path + ": truncated payload at frame " + std::to_string(i));
        }
        f.data.assign(payload.begin(), payload.end());
        visual += f.visual_token_count();
    }
    c.segmentation = EventSegmentation::from_starts(std::move(starts), static_cast<int>(t));
    if (c.segmentation.event_count() != c.events) {
        throw FormatError(path + ": spatial frame count disagrees with declared K");
    }
    c.visual_token_count = visual;
    c.total_token_count_with_time = visual + static_cast<int64_t>(t);
    return c;
}

} // namespace vtok
