#include "looptrees/stable.hpp"

#include <cmath>
#include <cstdlib>

#include "looptrees/gamma.hpp"

namespace looptrees {

double p1_density(const StableParams& params, double x) {
  const double alpha = params.alpha_stable;
  if (x == 0.0) return 1.0 / std::abs(gamma_fn(-1.0 / alpha));

  if (x > 10.0)
    throw ConvergenceFailure("p1 series unusable for x > 10");

  // Kahan-compensated sum of t_k = Gamma(1+k/alpha)/k! (-x)^k sin(k pi/alpha)
  // in long double; the roundoff floor scales with the largest term.
  const long double lx = std::log(static_cast<long double>(x));
  long double sum = 0.0L, comp = 0.0L, max_abs = 0.0L;
  const int cap = 2000;
  int small_run = 0;
  for (int k = 1; k <= cap; ++k) {
    long double logmag = std::lgamma(1.0L + k / static_cast<long double>(alpha)) -
                         std::lgamma(static_cast<long double>(k) + 1.0L) +
                         k * lx;
    long double term = std::exp(logmag) *
                       std::sin(k * static_cast<long double>(M_PI) / alpha);
    if (k & 1) term = -term;  // the (-x)^k sign
    long double y = term - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    long double mag = std::fabs(term);
    if (mag > max_abs) max_abs = mag;
    // Terms decay faster than geometrically once past the hump; three
    // consecutive tiny terms bound the remaining tail well under 1e-12.
    small_run = mag < 1e-14L ? small_run + 1 : 0;
    if (small_run >= 3) break;
    if (k == cap)
      throw ConvergenceFailure("p1 series did not reach the tail bound");
  }

  double value = static_cast<double>(-sum / (static_cast<long double>(M_PI) *
                                             static_cast<long double>(x)));
  // Observed cancellation error tracks ~300 ulps of the dominant term
  double noise = static_cast<double>(max_abs) * 3e-17 / (M_PI * x);
  if (noise > 1e-9)
    throw ConvergenceFailure("p1 series cancellation exceeds the noise budget");
  if (value < 0.0 && -value <= noise) value = 0.0;
  return value;
}

double stable_moment(const StableParams& params, double beta) {
  return gamma_fn(beta) / gamma_fn(beta / params.alpha_stable);
}

}  // namespace looptrees
