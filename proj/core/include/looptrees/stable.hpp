#pragma once

#include <stdexcept>

namespace looptrees {

struct ConvergenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Spectrally positive stable law of index alpha in (1,2), normalized so the
// unit-time Laplace transform is exp(lambda^alpha).
struct StableParams {
  double alpha_stable = 1.5;
};

// Density of the unit-time marginal at -x (x >= 0, the light-tail side),
// evaluated by the convergent power series
//   p1(-x) = -(1/(pi x)) sum_{k>=1} Gamma(1+k/alpha)/k! (-x)^k sin(k pi/alpha)
// with compensated extended-precision accumulation. The terms grow before
// they shrink, so cancellation limits the usable range; throws
// ConvergenceFailure when the roundoff floor exceeds 1e-9 (around x ~ 4.9
// for alpha = 3/2) or when the term cap is hit before the 1e-12 tail bound.
// At x = 0 returns the closed form 1/|Gamma(-1/alpha)|.
double p1_density(const StableParams& params, double x);

// Closed form for the absolute moment of the negative side:
//   integral_0^inf x^beta p1(-x) dx = Gamma(beta)/Gamma(beta/alpha).
double stable_moment(const StableParams& params, double beta);

}  // namespace looptrees
