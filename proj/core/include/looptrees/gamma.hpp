#pragma once

namespace looptrees {

// Gamma function via a Lanczos approximation (g = 7, 9 terms), with the
// reflection formula for arguments below 1/2. Relative accuracy is around
// 1e-14 on the ranges used here; see the unit tests for the identity checks.
double gamma_fn(double x);

// log |Gamma(x)| for x > 0. Accurate for large x, used for log-binomials.
double lgamma_pos(double x);

// log( binom(n, k) ) for nonnegative integers n >= k.
double log_binom(double n, double k);

}  // namespace looptrees
