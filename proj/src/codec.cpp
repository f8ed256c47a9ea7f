#include "vtok/codec.hpp"

#include <cmath>
#include <string>

#include "vtok/errors.hpp"

namespace vtok {

namespace {

// round half away from zero; all inputs here are >= 0
long long round_half_away(double x) {
    return std::llround(x);
}

int quantize_fraction(double value, double extent, int resolution, const char* what) {
    if (resolution < 1) {
        throw ValidationError(std::string(what) + ": resolution must be >= 1");
    }
    if (!(extent > 0.0) || !std::isfinite(extent)) {
        throw ValidationError(std::string(what) + ": extent must be positive");
    }
    if (!std::isfinite(value) || value < 0.0 || value > extent) {
        throw RangeError(std::string(what) + ": value " + std::to_string(value) +
                         " outside [0, " + std::to_string(extent) + "]");
    }
    long long q = round_half_away(value / extent * static_cast<double>(resolution));
    if (q < 0) q = 0;
    if (q > resolution) q = resolution;
    return static_cast<int>(q);
}

double dequantize_fraction(int value, double extent, int resolution, const char* what) {
    if (resolution < 1) {
        throw ValidationError(std::string(what) + ": resolution must be >= 1");
    }
    if (!(extent > 0.0) || !std::isfinite(extent)) {
        throw ValidationError(std::string(what) + ": extent must be positive");
    }
    if (value < 0 || value > resolution) {
        throw ValidationError(std::string(what) + ": quantized value " + std::to_string(value) +
                              " outside [0, " + std::to_string(resolution) + "]");
    }
    return static_cast<double>(value) / static_cast<double>(resolution) * extent;
}

} // namespace

void QuantizedTime::validate() const {
    if (resolution < 1) {
        throw ValidationError("time resolution must be >= 1");
    }
    if (z < 0 || z > resolution) {
        throw ValidationError("quantized time " + std::to_string(z) + " outside [0, " +
                              std::to_string(resolution) + "]");
    }
}

void QuantizedBox::validate() const {
    if (w_res < 1 || h_res < 1) {
        throw ValidationError("box resolutions must be >= 1");
    }
    if (!(0 <= x1 && x1 <= x2 && x2 <= w_res)) {
        throw ValidationError("quantized box violates 0 <= x1 <= x2 <= W_hat");
    }
    if (!(0 <= y1 && y1 <= y2 && y2 <= h_res)) {
        throw ValidationError("quantized box violates 0 <= y1 <= y2 <= H_hat");
    }
}

QuantizedTime quantize_time(double t, double duration_s, int resolution) {
    return QuantizedTime{quantize_fraction(t, duration_s, resolution, "time"), resolution};
}

double dequantize_time(const QuantizedTime& q, double duration_s) {
    q.validate();
    return dequantize_fraction(q.z, duration_s, q.resolution, "time");
}

int quantize_coord(double x, double extent, int resolution) {
    return quantize_fraction(x, extent, resolution, "coord");
}

double dequantize_coord(int value, double extent, int resolution) {
    return dequantize_fraction(value, extent, resolution, "coord");
}

QuantizedBox quantize_box(const PixelBox& box, double frame_w, double frame_h, int w_res,
                          int h_res) {
    auto corner = [&](double v, double extent, int res, const char* name) {
        try {
            return quantize_fraction(v, extent, res, name);
        } catch (const RangeError& e) {
            throw RangeError(std::string("box corner ") + name + ": " + e.what());
        }
    };
    QuantizedBox qb;
    qb.w_res = w_res;
    qb.h_res = h_res;
    qb.x1 = corner(box.x1, frame_w, w_res, "x1");
    qb.y1 = corner(box.y1, frame_h, h_res, "y1");
    qb.x2 = corner(box.x2, frame_w, w_res, "x2");
    qb.y2 = corner(box.y2, frame_h, h_res, "y2");
    qb.validate();
    return qb;
}

PixelBox dequantize_box(const QuantizedBox& qb, double frame_w, double frame_h) {
    qb.validate();
    return PixelBox{dequantize_fraction(qb.x1, frame_w, qb.w_res, "x1"),
                    dequantize_fraction(qb.y1, frame_h, qb.h_res, "y1"),
                    dequantize_fraction(qb.x2, frame_w, qb.w_res, "x2"),
                    dequantize_fraction(qb.y2, frame_h, qb.h_res, "y2")};
}

std::string render_position_text(long long value) {
    if (value < 0) {
        throw ValidationError("position values are non-negative");
    }
    return std::to_string(value);
}

} // namespace vtok
