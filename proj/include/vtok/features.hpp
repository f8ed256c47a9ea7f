#ifndef VTOK_FEATURES_HPP
#define VTOK_FEATURES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace vtok {

/// One frame's projected feature map, shape (h, w, d), row-major then channel.
/// Values are held as doubles in memory; the on-disk format stores them as
/// little-endian f32 (see read_feature_dump / write_feature_dump).
struct FrameFeatureMap {
    int frame_index = 0; ///< 0-based position within the parent video
    double timestamp = 0.0; ///< seconds from video start
    int h = 0;
    int w = 0;
    int d = 0;
    std::vector<double> data; ///< size h*w*d, index (r*w + c)*d + ch

    double at(int r, int c, int ch) const { return data[(static_cast<size_t>(r) * w + c) * d + ch]; }
    double& at(int r, int c, int ch) { return data[(static_cast<size_t>(r) * w + c) * d + ch]; }
    size_t size() const { return data.size(); }

    bool operator==(const FrameFeatureMap&) const = default;
};

/// Ordered frame features for one video.
///
/// Invariants (checked by validate()):
///  - at least one frame, all frames share one (h, w, d) with h,w,d >= 1
///  - timestamps strictly increasing, inside [0, duration_s]
///  - every value finite
struct VideoFeatures {
    std::string video_id;
    double duration_s = 0.0;
    std::vector<FrameFeatureMap> frames;

    int frame_count() const { return static_cast<int>(frames.size()); }
    int h() const { return frames.empty() ? 0 : frames.front().h; }
    int w() const { return frames.empty() ? 0 : frames.front().w; }
    int d() const { return frames.empty() ? 0 : frames.front().d; }

    /// Throws ValidationError if any invariant fails.
    void validate() const;

    bool operator==(const VideoFeatures&) const = default;
};

/// Axis-aligned pixel box, corners (x1, y1) top-left inclusive, (x2, y2).
struct PixelBox {
    double x1 = 0, y1 = 0, x2 = 0, y2 = 0;

    double area() const { return (x2 - x1) * (y2 - y1); }
    bool operator==(const PixelBox&) const = default;
};

/// One tracked instance: category, the two captions produced upstream, its
/// time interval and the boxes at the interval endpoints.
struct TrajectoryRecord {
    std::string video_id;
    double duration_s = 0.0;
    double frame_width = 0.0;
    double frame_height = 0.0;
    std::string category;
    std::string static_caption;
    std::string dynamic_caption;
    double t1 = 0.0;
    double t2 = 0.0;
    PixelBox bbox1;
    PixelBox bbox2;

    /// Throws ValidationError naming the offending field.
    void validate() const;

    bool operator==(const TrajectoryRecord&) const = default;
};

// ---------------------------------------------------------------------------
// IMVF feature-dump binary format (little-endian)
//
//   offset  0  magic "IMVF"
//   offset  4  u32 version (= 1)
//   offset  8  u32 T
//   offset 12  u32 h
//   offset 16  u32 w
//   offset 20  u32 d
//   offset 24  f64 duration_s
//   offset 32  32 reserved zero bytes
//   offset 64  T f64 timestamps
//   then       T*h*w*d f32 values, frame-major then row-major
//              (frame, row, column, channel)
//
// video_id is not stored; readers derive it from the file name stem.
// ---------------------------------------------------------------------------

inline constexpr size_t kImvfHeaderSize = 64;
inline constexpr uint32_t kImvfVersion = 1;

/// Parses an IMVF file. Bad magic/version or truncation -> FormatError;
/// invariant violations (shape, ordering, non-finite values) -> ValidationError.
VideoFeatures read_feature_dump(const std::string& path);

/// Validates v, then writes it atomically (temp file + rename). Values are
/// narrowed to f32; inputs that round-trip bit-exactly are those already
/// representable in f32, which holds for anything read from an IMVF file.
void write_feature_dump(const VideoFeatures& v, const std::string& path);

/// Serialized size in bytes of a dump with the given dimensions.
size_t feature_dump_size(int t, int h, int w, int d);

// ---------------------------------------------------------------------------
// Trajectory JSONL: one object per line with keys video_id, duration_s,
// frame_width, frame_height, category, static_caption, dynamic_caption,
// t1, t2, bbox1, bbox2 (boxes as 4-element arrays [x1, y1, x2, y2]).
// ---------------------------------------------------------------------------

struct TrajectoryReadResult {
    struct Issue {
        size_t line = 0; ///< 1-based line number
        std::string message;
    };
    std::vector<TrajectoryRecord> records; ///< valid records in file order
    std::vector<Issue> issues; ///< one entry per rejected line
    size_t lines_total = 0; ///< non-blank lines seen
};

/// Reads a trajectory JSONL file. Malformed or invalid lines are rejected
/// individually and reported with their line number; valid records keep file
/// order. Missing file -> IoError.
TrajectoryReadResult read_trajectories(const std::string& path);

/// Writes records as trajectory JSONL (atomic). Each record is validated first.
void write_trajectories(const std::vector<TrajectoryRecord>& records, const std::string& path);

} // namespace vtok

#endif
