#ifndef VTOK_FIXTURES_HPP
#define VTOK_FIXTURES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vtok/features.hpp"

// Deterministic synthetic inputs for tests, demos and the gen-fixture CLI.

namespace vtok::fixtures {

/// Every frame identical; all similarities are exactly 1.
VideoFeatures make_constant_video(int t, int h, int w, int d, double duration_s,
                                  double value = 1.0);

/// First half of the frames hold pattern A, second half the orthogonal
/// pattern B (h*w*d must be >= 2). With T = 6 and K = 3 this produces the
/// events {1-2}, {3}, {4-6}.
VideoFeatures make_two_block_video(int t, int h, int w, int d, double duration_s);

/// Seeded pseudo-random features (f32-representable values, non-degenerate
/// norms); identical seeds give identical videos on every platform.
VideoFeatures make_random_video(int t, int h, int w, int d, double duration_s,
                                uint64_t seed);

/// Seeded synthetic trajectory records. Categories are drawn from a pool that
/// includes denylisted ones, and geometry spans accept and reject cases, so a
/// build over these exercises every filter gate.
std::vector<TrajectoryRecord> make_random_trajectories(int n, uint64_t seed);

} // namespace vtok::fixtures

#endif
