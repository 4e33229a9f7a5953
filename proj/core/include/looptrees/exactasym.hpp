#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "looptrees/laws.hpp"
#include "looptrees/planetree.hpp"

namespace looptrees {

struct CapTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TailBoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoundViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Windowed integer pmf: values[i] = P(X = offset_base + i). For laws on
// {0,1,2,...} the window [0, cap] is computed exactly (truncated mass can
// never flow back below the cap); lost_mass reports the weight outside.
struct PmfVector {
  std::vector<double> values;
  long long offset_base = 0;
  double lost_mass = 0.0;

  // Throws CapTooSmall outside the computed window.
  double at(long long k) const;
};

// Law of S_n = xi_1 + ... + xi_n on the window [0, support_cap], by binary
// exponentiation of the pmf polynomial (FFT-backed convolution).
PmfVector walk_pmf(const OffspringLaw& law, std::size_t n,
                   std::size_t support_cap);

// P(|tree| = n) under the law's Galton-Watson measure, via the cycle lemma:
// (1/n) P(S_n = n-1).
double gw_size_pmf(const OffspringLaw& law, std::size_t n);

// E[ sum_u weight(k_u) 1{|tree| = n} ] =
//   sum_k weight(k) law(k) P(S_{n-1} = n-1-k).
double gw_phi_sum(const OffspringLaw& law,
                  const std::function<double(long long)>& weight,
                  std::size_t n);

// Normalized hull-perimeter series at criticality (a = 1/2):
//   q_tilde(n) = gw_size_pmf(nu, n+1) / 24
//   k_tilde(n) = gw_phi_sum(nu, phi(.-1) 1{.>=1}, n+1) / 24, k_tilde(0) = 0.
double q_tilde(std::size_t n);
double k_tilde(std::size_t n);

// Both series for all n in [0, max_index] in one O(max_index^2) pass, via
// the generating-function recurrences y = z F(y) and the additive-functional
// transfer A = z f(y) / (1 - z F'(y)) with the closed form
// f(s) = s / (3 sqrt(2 pi) (1-s)^{3/2}).
class TildeTables {
 public:
  explicit TildeTables(std::size_t max_index);
  double q(std::size_t n) const { return q_[n]; }
  double k(std::size_t n) const { return k_[n]; }
  std::size_t max_index() const { return q_.size() - 1; }

 private:
  std::vector<double> q_, k_;
};

// Perimeter-weight scale for the cluster boundary, general a:
//   (r_c (gamma + 2a) / 2)^{p+1} * expectation factor.
// The expectation factor alone (which grows like p^{1/3} at a = 1/2) is
// exposed separately because the prefactor underflows for large p.
double k_alpha_p(double a, std::size_t p);
double k_alpha_expectation(double a, std::size_t p);

// Truncation point n + 64 sqrt(n+1) beyond which the binomial 2^{-n-m}
// weights are a certifiable normal tail.
std::size_t default_m_cap(std::size_t n);

// P(boundary length = n) for the infinite-triangulation hull:
//   72 sqrt(6 pi) sum_m binom(n+m,n) 2^{-n-m} (q~_m k~_n + q~_n k~_m).
// Throws TailBoundExceeded when the estimated truncation tail is more than
// 1e-3 of the partial sum. The tables overload must cover max(n, m_cap).
double perimeter_pmf_uipt(std::size_t n, const TildeTables& tables,
                          std::size_t m_cap = 0);
double perimeter_pmf_uipt(std::size_t n, std::size_t m_cap = 0);

// Finite Boltzmann-triangulation analogue:
//   192 sqrt(3) q~_n sum_m binom(n+m,n) 2^{-n-m} q~_m.
double perimeter_pmf_boltzmann(std::size_t n, const TildeTables& tables,
                               std::size_t m_cap = 0);
double perimeter_pmf_boltzmann(std::size_t n, std::size_t m_cap = 0);

// Local-limit-theorem discrepancy sup_k |a_n P(S_n = k) - p1((k-n*drift)/a_n)|
// over the left window k <= n*drift reachable by the density series, with
// a_n = (Gamma(-alpha) C)^{1/alpha} n^{1/alpha} read from the law's tail
// metadata.
double llt_error(const OffspringLaw& law, std::size_t n, double drift);

// Smallest constants (c1 with a factor-2 headroom, then minimal c2) with
//   P(S_N = N-k) <= c1 N^{-1/alpha} exp(-c2 k^alpha / N) for k in [0,k_max].
// Throws BoundViolated if no positive c2 fits.
struct TailBoundFit {
  double c1 = 0.0;
  double c2 = 0.0;
};
TailBoundFit tail_bound_check(const OffspringLaw& law, std::size_t big_n,
                              std::size_t k_max);

// Relative residual between the two closed forms of the component-tree
// weight of a two-type tree:
//   (r_c (2a+gamma)/2)^{|t|} prod mu_white/mu_black  vs
//   prod_white (a r_c) prod_black q_{k+1}.
double component_weight_residual(const TwoTypeTree& t, double a);

// Eliminates the leading n^{-1/3} correction from a limit estimate:
// (2^{1/3} f(2n) - f(n)) / (2^{1/3} - 1).
double richardson_n13(double f_n, double f_2n);

}  // namespace looptrees
