#ifndef VTOK_COMPRESSION_HPP
#define VTOK_COMPRESSION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vtok/codec.hpp"
#include "vtok/features.hpp"
#include "vtok/segmentation.hpp"

namespace vtok {

enum class FrameKind : uint8_t {
    SpatialRep = 0, ///< event-first frame, full (h, w, d) resolution
    TemporalRep = 1, ///< other frames, pooled to (h/s, w/s, d)
};

/// One frame of the compressed layout: full or pooled feature data plus the
/// relative temporal token appended after the frame's visual tokens.
struct PooledFrame {
    int frame_index = 0; ///< 1-based
    FrameKind kind = FrameKind::TemporalRep;
    int h = 0; ///< data height (h or h/s)
    int w = 0;
    int d = 0;
    std::vector<double> data; ///< size h*w*d
    QuantizedTime temporal_token;

    /// Visual tokens contributed by this frame (excludes the temporal token).
    int64_t visual_token_count() const { return static_cast<int64_t>(h) * w; }
};

/// Compressed per-video token layout with exact budget accounting.
struct CompressedVideoTokens {
    std::string video_id;
    double duration_s = 0.0;
    int source_h = 0, source_w = 0, source_d = 0;
    int events = 0; ///< K (0 means every frame pooled)
    int stride = 0; ///< s
    int time_resolution = 300; ///< Z
    std::vector<PooledFrame> frames; ///< length T, original temporal order
    EventSegmentation segmentation; ///< empty starts when K = 0
    int64_t visual_token_count = 0;
    int64_t total_token_count_with_time = 0;
};

/// Average-pools an (h, w, d) map over s x s spatial blocks into
/// (h/s, w/s, d); channels are untouched and sums accumulate in double.
/// s must divide both h and w -> PoolingShapeError otherwise.
std::vector<double> pool_frame(const FrameFeatureMap& f, int stride);

/// Builds the compressed layout: event-first frames keep full resolution,
/// all other frames are pooled with the given stride, and every frame gets a
/// quantized temporal token. k = 0 pools every frame (no segmentation).
/// The per-frame work runs under OpenMP; frames are independent.
CompressedVideoTokens compress_video(const VideoFeatures& v, int k, int stride,
                                     int time_resolution = 300);

/// K*h*w + (T-K)*(h/s)*(w/s), plus T when include_time_tokens. K = 0 means
/// every frame pooled. Headline figures exclude time tokens.
int64_t token_budget(int t, int h, int w, int k, int stride, bool include_time_tokens);

// ---------------------------------------------------------------------------
// IMVC compressed-dump binary format (little-endian)
//
//   offset  0  magic "IMVC"
//   offset  4  u32 version (= 1)
//   offset  8  u32 T
//   offset 12  u32 h        (source height; pooled frames are h/s)
//   offset 16  u32 w
//   offset 20  u32 d
//   offset 24  f64 duration_s
//   offset 32  u32 K
//   offset 36  u32 s
//   offset 40  u32 Z
//   offset 44  20 reserved zero bytes
//   offset 64  per frame, in order: u8 kind (0 spatial, 1 temporal),
//              u32 temporal token z, then h'*w'*d f32 values where
//              (h', w') is (h, w) for spatial and (h/s, w/s) for temporal.
// ---------------------------------------------------------------------------

void write_compressed_dump(const CompressedVideoTokens& c, const std::string& path);
CompressedVideoTokens read_compressed_dump(const std::string& path);

} // namespace vtok

#endif
