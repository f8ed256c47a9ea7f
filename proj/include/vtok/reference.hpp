#ifndef VTOK_REFERENCE_HPP
#define VTOK_REFERENCE_HPP

#include <vector>

#include "vtok/features.hpp"
#include "vtok/segmentation.hpp"

// Serial reference implementations of the numeric kernels. Plain scalar
// loops, no OpenMP, written independently of the main kernels; the tests use
// them as oracles and the benchmark compares against them.

namespace vtok::ref {

double cosine_similarity_serial(const FrameFeatureMap& a, const FrameFeatureMap& b);

std::vector<double> similarity_series_serial(const VideoFeatures& v);

std::vector<double> change_rate_serial(const std::vector<double>& similarities);

/// Brute-force event selection: full change-rate computation, stable sort of
/// candidates by (value desc, index asc), take the first K-1.
std::vector<int> segment_events_serial(const VideoFeatures& v, int k);

std::vector<double> pool_frame_serial(const FrameFeatureMap& f, int stride);

} // namespace vtok::ref

#endif
