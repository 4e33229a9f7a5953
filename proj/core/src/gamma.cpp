#include "looptrees/gamma.hpp"

#include <cmath>
#include <limits>

namespace looptrees {

namespace {

// Lanczos coefficients for g = 7, n = 9 (Godfrey's values).
constexpr double kG = 7.0;
constexpr double kCoef[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_sum(double x) {
  // x >= 0 here; series evaluated at shifted argument.
  double s = kCoef[0];
  for (int i = 1; i < 9; ++i) s += kCoef[i] / (x + i);
  return s;
}

}  // namespace

double gamma_fn(double x) {
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    double s = std::sin(M_PI * x);
    if (s == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return M_PI / (s * gamma_fn(1.0 - x));
  }
  double z = x - 1.0;
  double t = z + kG + 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) *
         lanczos_sum(z);
}

double lgamma_pos(double x) {
  double z = x - 1.0;
  double t = z + kG + 0.5;
  return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t +
         std::log(lanczos_sum(z));
}

double log_binom(double n, double k) {
  return lgamma_pos(n + 1.0) - lgamma_pos(k + 1.0) - lgamma_pos(n - k + 1.0);
}

}  // namespace looptrees
