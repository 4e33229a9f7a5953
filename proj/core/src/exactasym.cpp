#include "looptrees/exactasym.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fftconv.hpp"
#include "looptrees/gamma.hpp"
#include "looptrees/stable.hpp"

namespace looptrees {

namespace {

struct KahanAcc {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

const OffspringLaw& critical_nu() {
  static const OffspringLaw law = OffspringLaw::make_nu(0.5);
  return law;
}

double phi_shift_weight(long long k) {
  return k >= 1 ? phi_weight(k - 1) : 0.0;
}

}  // namespace

double PmfVector::at(long long k) const {
  long long i = k - offset_base;
  if (i < 0 || i >= static_cast<long long>(values.size()))
    throw CapTooSmall("queried index outside the computed pmf window");
  return values[static_cast<std::size_t>(i)];
}

PmfVector walk_pmf(const OffspringLaw& law, std::size_t n,
                   std::size_t support_cap) {
  const std::size_t len = support_cap + 1;
  std::vector<double> step(law.masses.begin(),
                           law.masses.begin() +
                               std::min(law.masses.size(), len));
  step.resize(std::min(step.size(), len));

  std::vector<double> result{1.0};
  std::size_t e = n;
  std::vector<double> base = step;
  while (e > 0) {
    if (e & 1) result = detail::convolve(result, base, len);
    e >>= 1;
    if (e > 0) base = detail::convolve(base, base, len);
  }
  result.resize(len, 0.0);

  PmfVector out;
  out.values = std::move(result);
  KahanAcc total;
  for (double v : out.values) total.add(v);
  out.lost_mass = std::max(0.0, 1.0 - total.sum);
  return out;
}

double gw_size_pmf(const OffspringLaw& law, std::size_t n) {
  if (n == 1) return law.mass(0);
  auto pmf = walk_pmf(law, n, n - 1);
  return pmf.at(static_cast<long long>(n) - 1) / static_cast<double>(n);
}

double gw_phi_sum(const OffspringLaw& law,
                  const std::function<double(long long)>& weight,
                  std::size_t n) {
  if (n == 1) return weight(0) * law.mass(0);
  auto pmf = walk_pmf(law, n - 1, n - 1);
  KahanAcc acc;
  for (std::size_t k = 0; k < n; ++k) {
    double w = weight(static_cast<long long>(k));
    if (w == 0.0) continue;
    acc.add(w * law.mass(static_cast<long long>(k)) *
            pmf.values[n - 1 - k]);
  }
  return acc.sum;
}

double q_tilde(std::size_t n) {
  return gw_size_pmf(critical_nu(), n + 1) / 24.0;
}

double k_tilde(std::size_t n) {
  if (n == 0) return 0.0;
  return gw_phi_sum(critical_nu(), phi_shift_weight, n + 1) / 24.0;
}

TildeTables::TildeTables(std::size_t max_index) {
  const std::size_t d = max_index + 1;  // series degree needed
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  const double half_sqrt3 = std::sqrt(3.0) / 2.0;

  // y = z F(y) with F(w) = w + (1-w)^{3/2}/sqrt(3); u = (1-y)^{3/2} and
  // v = (1-y)^{1/2} via the power rule g = h^p:
  //   n g_n = sum_{j=1..n} ((p+1) j - n) h_j g_{n-j},  h = 1 - y, h_0 = 1.
  std::vector<double> y(d + 1, 0.0), u(d + 1, 0.0), v(d + 1, 0.0);
  u[0] = v[0] = 1.0;
  for (std::size_t n = 1; n <= d; ++n) {
    y[n] = y[n - 1] + u[n - 1] * inv_sqrt3;
    KahanAcc au, av;
    double dn = static_cast<double>(n);
    for (std::size_t j = 1; j <= n; ++j) {
      double hj = -y[j];
      double dj = static_cast<double>(j);
      au.add((2.5 * dj - dn) * hj * u[n - j]);
      av.add((1.5 * dj - dn) * hj * v[n - j]);
    }
    u[n] = au.sum / dn;
    v[n] = av.sum / dn;
  }

  std::vector<double> inv_u(d + 1, 0.0);
  inv_u[0] = 1.0;
  for (std::size_t n = 1; n <= d; ++n) {
    KahanAcc acc;
    for (std::size_t j = 1; j <= n; ++j) acc.add(u[j] * inv_u[n - j]);
    inv_u[n] = -acc.sum;
  }

  // f(y) = y/(3 sqrt(2 pi) u); A = z f(y) / (1 - z F'(y)),
  // F'(y) = 1 - (sqrt(3)/2) v.
  const double fscale = 1.0 / (3.0 * std::sqrt(2.0 * M_PI));
  std::vector<double> fw(d + 1, 0.0);
  for (std::size_t n = 0; n <= d; ++n) {
    KahanAcc acc;
    for (std::size_t j = 0; j <= n; ++j) acc.add(y[j] * inv_u[n - j]);
    fw[n] = acc.sum * fscale;
  }

  std::vector<double> den(d + 1, 0.0);  // D_n with D_0 = 1
  den[0] = 1.0;
  den[1] = -(1.0 - half_sqrt3);
  for (std::size_t n = 2; n <= d; ++n) den[n] = half_sqrt3 * v[n - 1];

  std::vector<double> A(d + 1, 0.0);
  for (std::size_t n = 1; n <= d; ++n) {
    KahanAcc acc;
    acc.add(fw[n - 1]);  // numerator coefficient of z f(y)
    for (std::size_t j = 1; j <= n; ++j) acc.add(-den[j] * A[n - j]);
    A[n] = acc.sum;
  }

  q_.resize(max_index + 1);
  k_.resize(max_index + 1);
  for (std::size_t m = 0; m <= max_index; ++m) {
    q_[m] = y[m + 1] / 24.0;
    k_[m] = A[m + 1] / 24.0;
  }
}

double k_alpha_expectation(double a, std::size_t p) {
  auto law = OffspringLaw::make_nu(a, std::max<std::size_t>(p + 2, 4096));
  return gw_phi_sum(law, phi_shift_weight, p + 1);
}

double k_alpha_p(double a, std::size_t p) {
  const auto mc = model_constants();
  double scale = mc.r_c * (mc.gamma + 2.0 * a) / 2.0;
  return std::pow(scale, static_cast<double>(p + 1)) *
         k_alpha_expectation(a, p);
}

std::size_t default_m_cap(std::size_t n) {
  return n + static_cast<std::size_t>(
                 64.0 * std::sqrt(static_cast<double>(n + 1)));
}

namespace {

// binom(n+m, n) 2^{-n-m} weighted sums with a geometric tail certificate:
// past m_cap > n the term ratio is below
// ((n+m+1)/(2(m+1))) * growth, growth covering the slow series factor.
template <typename Term>
double binomial_tail_sum(std::size_t n, std::size_t m_cap, double tail_budget,
                         const Term& term_of) {
  const double ln2 = std::log(2.0);
  KahanAcc acc;
  double last_w = 0.0;
  for (std::size_t m = 0; m <= m_cap; ++m) {
    double w = std::exp(log_binom(n + m, n) -
                        static_cast<double>(n + m) * ln2);
    acc.add(w * term_of(m));
    if (m == m_cap) last_w = w * term_of(m);
  }
  double ratio = static_cast<double>(n + m_cap + 1) /
                 (2.0 * static_cast<double>(m_cap + 1));
  ratio *= 1.01;  // headroom for the sub-polynomial series growth
  if (ratio >= 1.0)
    throw TailBoundExceeded("m_cap below the geometric-decay threshold");
  double tail_est = last_w * ratio / (1.0 - ratio);
  if (tail_est > tail_budget * acc.sum)
    throw TailBoundExceeded("truncation tail exceeds the certified budget");
  return acc.sum;
}

}  // namespace

double perimeter_pmf_uipt(std::size_t n, const TildeTables& t,
                          std::size_t m_cap) {
  if (m_cap == 0) m_cap = default_m_cap(n);
  if (t.max_index() < std::max(n, m_cap))
    throw std::invalid_argument("series tables too short for this n");
  double kn = t.k(n), qn = t.q(n);
  double sum = binomial_tail_sum(n, m_cap, 1e-3, [&](std::size_t m) {
    return t.q(m) * kn + qn * t.k(m);
  });
  return 72.0 * std::sqrt(6.0 * M_PI) * sum;
}

double perimeter_pmf_uipt(std::size_t n, std::size_t m_cap) {
  if (m_cap == 0) m_cap = default_m_cap(n);
  TildeTables t(std::max(n, m_cap));
  return perimeter_pmf_uipt(n, t, m_cap);
}

double perimeter_pmf_boltzmann(std::size_t n, const TildeTables& t,
                               std::size_t m_cap) {
  if (m_cap == 0) m_cap = default_m_cap(n);
  if (t.max_index() < std::max(n, m_cap))
    throw std::invalid_argument("series tables too short for this n");
  double sum = binomial_tail_sum(n, m_cap, 1e-3,
                                 [&](std::size_t m) { return t.q(m); });
  return 192.0 * std::sqrt(3.0) * t.q(n) * sum;
}

double perimeter_pmf_boltzmann(std::size_t n, std::size_t m_cap) {
  if (m_cap == 0) m_cap = default_m_cap(n);
  TildeTables t(std::max(n, m_cap));
  return perimeter_pmf_boltzmann(n, t, m_cap);
}

double llt_error(const OffspringLaw& law, std::size_t n, double drift) {
  const double alpha = law.tail_exponent;
  const double c_tail = law.tail_constant;
  if (alpha <= 1.0 || alpha >= 2.0 || c_tail <= 0.0)
    throw DomainError("llt_error needs tail metadata with index in (1,2)");
  const double a_n = std::pow(gamma_fn(-alpha) * c_tail, 1.0 / alpha) *
                     std::pow(static_cast<double>(n), 1.0 / alpha);
  const double center = static_cast<double>(n) * drift;
  const long long k_hi = static_cast<long long>(center);
  const long long k_lo =
      std::max<long long>(0, static_cast<long long>(center - 4.8 * a_n));
  auto pmf = walk_pmf(law, n, static_cast<std::size_t>(k_hi));
  StableParams sp{alpha};
  double sup = 0.0;
  for (long long k = k_lo; k <= k_hi; ++k) {
    double x = (center - static_cast<double>(k)) / a_n;
    double err = std::abs(a_n * pmf.at(k) - p1_density(sp, x));
    sup = std::max(sup, err);
  }
  return sup;
}

TailBoundFit tail_bound_check(const OffspringLaw& law, std::size_t big_n,
                              std::size_t k_max) {
  const double alpha = law.tail_exponent;
  if (alpha <= 1.0 || alpha >= 2.0)
    throw DomainError("tail_bound_check needs a tail index in (1,2)");
  const double n = static_cast<double>(big_n);
  auto pmf = walk_pmf(law, big_n, big_n);

  double peak = 0.0;
  for (std::size_t k = 0; k <= k_max; ++k)
    peak = std::max(peak, pmf.at(static_cast<long long>(big_n - k)));
  TailBoundFit fit;
  fit.c1 = 2.0 * std::pow(n, 1.0 / alpha) * peak;

  double c2 = std::numeric_limits<double>::infinity();
  const double log_c1_scaled = std::log(fit.c1) - std::log(n) / alpha;
  for (std::size_t k = 1; k <= k_max; ++k) {
    double p = pmf.at(static_cast<long long>(big_n - k));
    if (p <= 0.0) continue;
    double x = std::pow(static_cast<double>(k), alpha) / n;
    c2 = std::min(c2, (log_c1_scaled - std::log(p)) / x);
  }
  if (!(c2 > 0.0))
    throw BoundViolated("no positive decay constant fits the grid");
  fit.c2 = c2;
  return fit;
}

double component_weight_residual(const TwoTypeTree& t, double a) {
  const auto mc = model_constants();
  const auto& degs = t.tree.degrees();
  const std::size_t n = degs.size();

  double left = std::pow(mc.r_c * (2.0 * a + mc.gamma) / 2.0,
                         static_cast<double>(n));
  double right = 1.0;
  for (std::size_t v = 0; v < n; ++v) {
    if (t.is_white(v)) {
      left *= mu_white(a, degs[v]);
      right *= a * mc.r_c;
    } else {
      left *= mu_black(degs[v]);
      right *= q_k(degs[v] + 1);
    }
  }
  return std::abs(left - right) / left;
}

double richardson_n13(double f_n, double f_2n) {
  const double r = std::cbrt(2.0);
  return (r * f_2n - f_n) / (r - 1.0);
}

}  // namespace looptrees
