#pragma once

#include <cstdint>
#include <vector>

#include "looptrees/metric.hpp"

namespace looptrees {

struct ScalingPoint {
  std::size_t n = 0;  // boundary length (sum of cycle lengths)
  double mean_diameter = 0.0;
  double stderr_diameter = 0.0;
  double mean_max_cycle_fraction = 0.0;
};

// Monte Carlo over cluster-boundary graphs: draw the offspring-law tree
// conditioned to n+1 vertices, contract it to its loop graph (total cycle
// length n), and record the diameter and the largest-cycle share.
// Deterministic given seed: each (size, sample) pair uses its own counter
// stream, so results do not depend on evaluation order.
std::vector<ScalingPoint> boundary_scaling(double a,
                                           const std::vector<std::size_t>& sizes,
                                           std::size_t samples,
                                           std::uint64_t seed);

// Log-log slope of mean diameter against boundary length.
FitResult scaling_fit(const std::vector<ScalingPoint>& points);

}  // namespace looptrees
