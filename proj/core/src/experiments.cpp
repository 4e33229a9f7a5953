#include "looptrees/experiments.hpp"

#include <cmath>

#include "looptrees/bijections.hpp"
#include "looptrees/rng.hpp"
#include "looptrees/sampler.hpp"

namespace looptrees {

std::vector<ScalingPoint> boundary_scaling(
    double a, const std::vector<std::size_t>& sizes, std::size_t samples,
    std::uint64_t seed) {
  auto law = OffspringLaw::make_nu(a);
  std::vector<ScalingPoint> out;
  out.reserve(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const std::size_t n = sizes[i];
    ConditionedSampler cs(law, n + 1);
    double sum_d = 0.0, sum_d2 = 0.0, sum_frac = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
      CounterRng rng(seed, (static_cast<std::uint64_t>(i) << 32) | s);
      PlaneTree tree = cs.sample(rng);
      LoopGraph g = loop_bar_of(tree);
      // bracket lower bound: the all-sources exact diameter would dominate
      // the whole Monte Carlo budget at these sizes
      double d = static_cast<double>(diameter_bracket(g).lower);
      sum_d += d;
      sum_d2 += d * d;
      sum_frac += max_cycle_fraction(g);
    }
    const double m = static_cast<double>(samples);
    ScalingPoint pt;
    pt.n = n;
    pt.mean_diameter = sum_d / m;
    double var = (sum_d2 - sum_d * sum_d / m) / (m - 1.0);
    pt.stderr_diameter = std::sqrt(std::max(0.0, var) / m);
    pt.mean_max_cycle_fraction = sum_frac / m;
    out.push_back(pt);
  }
  return out;
}

FitResult scaling_fit(const std::vector<ScalingPoint>& points) {
  std::vector<std::pair<double, double>> xy;
  xy.reserve(points.size());
  for (const auto& p : points)
    xy.emplace_back(static_cast<double>(p.n), p.mean_diameter);
  return fit_exponent(xy);
}

}  // namespace looptrees
