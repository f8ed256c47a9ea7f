#ifndef VTOK_CODEC_HPP
#define VTOK_CODEC_HPP

#include <string>

#include "vtok/features.hpp"

namespace vtok {

/// Discrete relative time, z in [0, Z].
struct QuantizedTime {
    int z = 0;
    int resolution = 300; ///< Z

    void validate() const;
    bool operator==(const QuantizedTime&) const = default;
};

/// Discrete relative box, corners in [0, W_hat] x [0, H_hat].
struct QuantizedBox {
    int x1 = 0, y1 = 0, x2 = 0, y2 = 0;
    int w_res = 1000; ///< W_hat
    int h_res = 1000; ///< H_hat

    void validate() const;
    bool operator==(const QuantizedBox&) const = default;
};

// z = round(t / D * Z), rounding half away from zero. t must lie in [0, D].
QuantizedTime quantize_time(double t, double duration_s, int resolution);

// t = z / Z * D
double dequantize_time(const QuantizedTime& q, double duration_s);

// Same mapping per coordinate axis: x_hat = round(x / W * W_hat).
int quantize_coord(double x, double extent, int resolution);
double dequantize_coord(int value, double extent, int resolution);

QuantizedBox quantize_box(const PixelBox& box, double frame_w, double frame_h,
                          int w_res, int h_res);
PixelBox dequantize_box(const QuantizedBox& qb, double frame_w, double frame_h);

/// Canonical decimal rendering of a non-negative position value ("0", "75", "300").
std::string render_position_text(long long value);

} // namespace vtok

#endif
