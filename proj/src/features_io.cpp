#include "vtok/features.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "io_util.hpp"
#include "vtok/errors.hpp"

namespace vtok {

using nlohmann::json;

namespace {

constexpr char kImvfMagic[4] = {'I', 'M', 'V', 'F'};

std::string shape_str(int h, int w, int d) {
    std::ostringstream os;
    os << h << "x" << w << "x" << d;
    return os.str();
}

} // namespace

void VideoFeatures::validate() const {
    if (frames.empty()) {
        throw ValidationError("video '" + video_id + "' has no frames");
    }
    if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
        throw ValidationError("video '" + video_id + "' duration_s must be positive");
    }
    const int fh = frames.front().h, fw = frames.front().w, fd = frames.front().d;
    if (fh < 1 || fw < 1 || fd < 1) {
        throw ValidationError("video '" + video_id + "' has invalid feature shape " +
                              shape_str(fh, fw, fd));
    }
    double prev_ts = -1.0;
    for (size_t i = 0; i < frames.size(); ++i) {
        const FrameFeatureMap& f = frames[i];
        if (f.h != fh || f.w != fw || f.d != fd) {
            throw ValidationError("frame " + std::to_string(i) + " shape " +
                                  shape_str(f.h, f.w, f.d) + " differs from " +
                                  shape_str(fh, fw, fd));
        }
        if (f.data.size() != static_cast<size_t>(fh) * fw * fd) {
            throw ValidationError("frame " + std::to_string(i) + " payload size mismatch");
        }
        if (!std::isfinite(f.timestamp) || f.timestamp < 0.0 || f.timestamp > duration_s) {
            throw ValidationError("frame " + std::to_string(i) +
                                  " timestamp outside [0, duration]");
        }
        if (f.timestamp <= prev_ts) {
            throw ValidationError("frame " + std::to_string(i) +
                                  " timestamp not strictly increasing");
        }
        prev_ts = f.timestamp;
        for (double v : f.data) {
            if (!std::isfinite(v)) {
                throw ValidationError("frame " + std::to_string(i) +
                                      " contains a non-finite value");
            }
        }
    }
}

void TrajectoryRecord::validate() const {
    if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
        throw ValidationError("duration_s must be positive");
    }
    if (!(frame_width > 0.0) || !(frame_height > 0.0)) {
        throw ValidationError("frame_width and frame_height must be positive");
    }
    if (!std::isfinite(t1) || !std::isfinite(t2) || t1 < 0.0) {
        throw ValidationError("t1 must be a non-negative finite number");
    }
    if (!(t1 < t2)) {
        throw ValidationError("t1 < t2 violated");
    }
    if (t2 > duration_s) {
        throw ValidationError("t2 exceeds duration_s");
    }
    auto check_box = [&](const PixelBox& b, const char* name) {
        if (!std::isfinite(b.x1) || !std::isfinite(b.y1) || !std::isfinite(b.x2) ||
            !std::isfinite(b.y2)) {
            throw ValidationError(std::string(name) + " has a non-finite coordinate");
        }
        if (!(b.x1 >= 0.0 && b.x1 < b.x2 && b.x2 <= frame_width)) {
            throw ValidationError(std::string(name) + ": 0 <= x1 < x2 <= frame_width violated");
        }
        if (!(b.y1 >= 0.0 && b.y1 < b.y2 && b.y2 <= frame_height)) {
            throw ValidationError(std::string(name) + ": 0 <= y1 < y2 <= frame_height violated");
        }
    };
    check_box(bbox1, "bbox1");
    check_box(bbox2, "bbox2");
}

size_t feature_dump_size(int t, int h, int w, int d) {
    return kImvfHeaderSize + static_cast<size_t>(t) * sizeof(double) +
           static_cast<size_t>(t) * h * w * d * sizeof(float);
}

VideoFeatures read_feature_dump(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open feature dump: " + path);
    }

    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, kImvfMagic, 4) != 0) {
        throw FormatError(path + ": bad magic, not an IMVF file");
    }
    uint32_t version = 0, t = 0, h = 0, w = 0, d = 0;
    double duration = 0.0;
    if (!detail::read_raw(in, version) || !detail::read_raw(in, t) || !detail::read_raw(in, h) ||
        !detail::read_raw(in, w) || !detail::read_raw(in, d) || !detail::read_raw(in, duration)) {
        throw FormatError(path + ": truncated header");
    }
    if (version != kImvfVersion) {
        throw FormatError(path + ": unsupported IMVF version " + std::to_string(version));
    }
    char reserved[32];
    in.read(reserved, sizeof(reserved));
    if (in.gcount() != static_cast<std::streamsize>(sizeof(reserved))) {
        throw FormatError(path + ": truncated header");
    }

    if (t < 1 || h < 1 || w < 1 || d < 1) {
        throw ValidationError(path + ": inconsistent shape T=" + std::to_string(t) + " " +
                              shape_str(static_cast<int>(h), static_cast<int>(w),
                                        static_cast<int>(d)));
    }

    VideoFeatures v;
    v.video_id = std::filesystem::path(path).stem().string();
    v.duration_s = duration;
    v.frames.resize(t);

    std::vector<double> timestamps(t);
    for (uint32_t i = 0; i < t; ++i) {
        if (!detail::read_raw(in, timestamps[i])) {
            throw FormatError(path + ": truncated timestamp table");
        }
    }

    const size_t per_frame = static_cast<size_t>(h) * w * d;
    std::vector<float> payload(per_frame);
    for (uint32_t i = 0; i < t; ++i) {
        in.read(reinterpret_cast<char*>(payload.data()),
                static_cast<std::streamsize>(per_frame * sizeof(float)));
        if (in.gcount() != static_cast<std::streamsize>(per_frame * sizeof(float))) {
            throw FormatError(path + ": truncated at frame " + std::to_string(i) + " of " +
                              std::to_string(t));
        }
        FrameFeatureMap& f = v.frames[i];
        f.frame_index = static_cast<int>(i);
        f.timestamp = timestamps[i];
        f.h = static_cast<int>(h);
        f.w = static_cast<int>(w);
        f.d = static_cast<int>(d);
        f.data.assign(payload.begin(), payload.end());
    }
    // Trailing bytes mean the declared shape disagrees with the payload.
    if (in.peek() != std::char_traits<char>::eof()) {
        throw FormatError(path + ": trailing bytes after declared payload");
    }

    v.validate();
    return v;
}

void write_feature_dump(const VideoFeatures& v, const std::string& path) {
    v.validate();

    detail::atomic_write(path, [&](std::ofstream& out) {
        out.write(kImvfMagic, 4);
        detail::write_raw(out, kImvfVersion);
        detail::write_raw(out, static_cast<uint32_t>(v.frame_count()));
        detail::write_raw(out, static_cast<uint32_t>(v.h()));
        detail::write_raw(out, static_cast<uint32_t>(v.w()));
        detail::write_raw(out, static_cast<uint32_t>(v.d()));
        detail::write_raw(out, v.duration_s);
        const char reserved[32] = {};
        out.write(reserved, sizeof(reserved));

        for (const FrameFeatureMap& f : v.frames) {
            detail::write_raw(out, f.timestamp);
        }
        std::vector<float> payload;
        for (const FrameFeatureMap& f : v.frames) {
            payload.assign(f.data.begin(), f.data.end());
            out.write(reinterpret_cast<const char*>(payload.data()),
                      static_cast<std::streamsize>(payload.size() * sizeof(float)));
        }
    });
}

namespace {

PixelBox parse_box(const json& j, const char* name) {
    if (!j.is_array() || j.size() != 4) {
        throw ValidationError(std::string(name) + " must be a 4-element array");
    }
    for (const auto& e : j) {
        if (!e.is_number()) {
            throw ValidationError(std::string(name) + " must contain only numbers");
        }
    }
    return PixelBox{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
                    j[3].get<double>()};
}

TrajectoryRecord parse_record(const json& j) {
    auto need = [&](const char* key) -> const json& {
        auto it = j.find(key);
        if (it == j.end()) {
            throw ValidationError(std::string("missing key '") + key + "'");
        }
        return *it;
    };
    TrajectoryRecord r;
    r.video_id = need("video_id").get<std::string>();
    r.duration_s = need("duration_s").get<double>();
    r.frame_width = need("frame_width").get<double>();
    r.frame_height = need("frame_height").get<double>();
    r.category = need("category").get<std::string>();
    r.static_caption = need("static_caption").get<std::string>();
    r.dynamic_caption = need("dynamic_caption").get<std::string>();
    r.t1 = need("t1").get<double>();
    r.t2 = need("t2").get<double>();
    r.bbox1 = parse_box(need("bbox1"), "bbox1");
    r.bbox2 = parse_box(need("bbox2"), "bbox2");
    r.validate();
    return r;
}

json record_to_json(const TrajectoryRecord& r) {
    return json{{"video_id", r.video_id},
                {"duration_s", r.duration_s},
                {"frame_width", r.frame_width},
                {"frame_height", r.frame_height},
                {"category", r.category},
                {"static_caption", r.static_caption},
                {"dynamic_caption", r.dynamic_caption},
                {"t1", r.t1},
                {"t2", r.t2},
                {"bbox1", {r.bbox1.x1, r.bbox1.y1, r.bbox1.x2, r.bbox1.y2}},
                {"bbox2", {r.bbox2.x1, r.bbox2.y1, r.bbox2.x2, r.bbox2.y2}}};
}

} // namespace

TrajectoryReadResult read_trajectories(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open trajectory file: " + path);
    }
    TrajectoryReadResult result;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue; // blank line
        }
        ++result.lines_total;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            result.issues.push_back({line_no, "malformed JSON"});
            continue;
        }
        try {
            result.records.push_back(parse_record(j));
        } catch (const ValidationError& e) {
            result.issues.push_back({line_no, e.what()});
        }
    }
    return result;
}

void write_trajectories(const std::vector<TrajectoryRecord>& records, const std::string& path) {
    for (const TrajectoryRecord& r : records) {
        r.validate();
    }
    detail::atomic_write(path, [&](std::ofstream& out) {
        for (const TrajectoryRecord& r : records) {
            out << record_to_json(r).dump() << "\n";
        }
    });
}

} // namespace vtok
