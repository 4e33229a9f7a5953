#include "looptrees/laws.hpp"

#include <cmath>
#include <complex>

#include "looptrees/gamma.hpp"

namespace looptrees {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kGammaC = kSqrt3 - 1.0;        // gamma
const double kRc = 1.0 / (12.0 * kSqrt3);   // 1/sqrt(432)
const double kZBlack = kGammaC * kRc / 2.0;

void check_a_open01(double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("a must lie in (0,1)");
}

}  // namespace

ModelConstants model_constants() {
  return ModelConstants{kRc, kGammaC, kZBlack, 2.0 / 27.0, 1.0 / 54.0};
}

double binom32_coeff(long long k) {
  if (k == 0) return 1.0;
  if (k == 1) return -1.5;
  double b = -1.5;
  for (long long j = 2; j <= k; ++j) b *= (j - 2.5) / j;
  return b;
}

double q_k(long long k) {
  if (k < 1) throw DomainError("q_k requires k >= 1");
  double v = binom32_coeff(k) / (24.0 * kSqrt3);
  if (k == 1) v += 1.0 / 24.0;
  return v;
}

double q_bar_k(long long k) {
  if (k < 1) throw DomainError("q_bar_k requires k >= 1");
  double v = binom32_coeff(k) / 27.0;
  if (k == 1) v += 1.0 / 18.0;
  return v;
}

double mu_black(long long j) {
  if (j < 0) throw DomainError("mu_black requires j >= 0");
  return q_k(j + 1) / kZBlack;
}

double mu_white(double a, long long j) {
  check_a_open01(a);
  if (j < 0) throw DomainError("mu_white requires j >= 0");
  double xi = kGammaC / (kGammaC + 2.0 * a);
  return (1.0 - xi) * std::pow(xi, static_cast<double>(j));
}

double nu(double a, long long k) {
  check_a_open01(a);
  if (k < 0) throw DomainError("nu requires k >= 0");
  double denom = kGammaC + 2.0 * a;  // = 2a - 1 + sqrt(3)
  if (k == 0) return 2.0 * a / denom;
  double v = binom32_coeff(k);
  if (k == 1) v += kSqrt3;
  return v / denom;
}

double nu_bar(double a, long long k) {
  check_a_open01(a);
  if (k < 0) throw DomainError("nu_bar requires k >= 0");
  double denom = 4.0 * a + 1.0;
  if (k == 0) return 4.0 * a / denom;
  double v = 2.0 * binom32_coeff(k);
  if (k == 1) v += 3.0;
  return v / denom;
}

double pgf_F(double a, double z) {
  check_a_open01(a);
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("pgf_F requires z in [0,1]");
  double denom = 2.0 * a - 1.0 + kSqrt3;
  return (2.0 * a - 1.0 + kSqrt3 * z + std::pow(1.0 - z, 1.5)) / denom;
}

double pgf_F_prime(double a, double z) {
  check_a_open01(a);
  double denom = 2.0 * a - 1.0 + kSqrt3;
  return (kSqrt3 - 1.5 * std::sqrt(1.0 - z)) / denom;
}

double pgf_F_second(double a, double z) {
  check_a_open01(a);
  return 0.75 / ((2.0 * a - 1.0 + kSqrt3) * std::sqrt(1.0 - z));
}

double pgf_F_bar(double a, double z) {
  check_a_open01(a);
  if (!(z >= 0.0 && z <= 1.0))
    throw DomainError("pgf_F_bar requires z in [0,1]");
  return (4.0 * a - 2.0 + 3.0 * z + 2.0 * std::pow(1.0 - z, 1.5)) /
         (4.0 * a + 1.0);
}

double lambda_tilt_closed(double a) {
  if (!(a > 0.0 && a < 0.5))
    throw DomainError("lambda_tilt requires a in (0, 1/2)");
  std::complex<double> c(8.0 * (1.0 - a) * a - 1.0,
                         -4.0 * (1.0 - 2.0 * a) * std::sqrt(a - a * a));
  std::complex<double> r = std::pow(c, 1.0 / 3.0);
  std::complex<double> lam = r + 1.0 / r - 1.0;
  if (std::abs(lam.imag()) > 1e-9) return -1.0;  // branch trouble; caller falls back
  return lam.real();
}

double lambda_tilt_bisect(double a) {
  if (!(a > 0.0 && a < 0.5))
    throw DomainError("lambda_tilt requires a in (0, 1/2)");
  // g(l) = l F'(l) - F(l); g(0) = -F(0) < 0, g(1) = F'(1) - 1 > 0.
  auto g = [a](double l) { return l * pgf_F_prime(a, l) - pgf_F(a, l); };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
    if (hi - lo < 1e-16) break;
  }
  return 0.5 * (lo + hi);
}

double lambda_tilt(double a) {
  double closed = lambda_tilt_closed(a);
  if (!(closed > 0.0 && closed < 1.0)) return lambda_tilt_bisect(a);
  double resid = std::abs(closed * pgf_F_prime(a, closed) - pgf_F(a, closed));
  if (resid > 1e-12) return lambda_tilt_bisect(a);
  return closed;
}

double nu_tilted(double a, long long k) {
  double lam = lambda_tilt(a);
  return nu(a, k) * std::pow(lam, static_cast<double>(k)) / pgf_F(a, lam);
}

double sigma_tilde_sq(double a) {
  double lam = lambda_tilt(a);
  return lam * lam * pgf_F_second(a, lam) / pgf_F(a, lam);
}

double nu_tilted_even_mass(double a) {
  double lam = lambda_tilt(a);
  // (F~(1) + F~(-1)) / 2 with F~(z) = F(lam z)/F(lam). F at a negative
  // argument is still given by the same analytic expression.
  double denom = 2.0 * a - 1.0 + kSqrt3;
  double f_neg =
      (2.0 * a - 1.0 - kSqrt3 * lam + std::pow(1.0 + lam, 1.5)) / denom;
  return 0.5 * (1.0 + f_neg / pgf_F(a, lam));
}

double c_alpha(double a) {
  check_a_open01(a);
  if (a == 0.5) throw DomainError("c_alpha undefined at a = 1/2");
  if (a > 0.5) return (2.0 * a - 1.0) / (kSqrt3 - 1.0 + 2.0 * a);
  double s2 = sigma_tilde_sq(a);
  double s = std::sqrt(s2);
  return (2.0 / s) * 0.25 * (s2 + nu_tilted_even_mass(a));
}

double c_alpha_type2(double a) {
  if (!(a >= 0.5 && a < 1.0))
    throw DomainError("c_alpha_type2 requires a in [1/2, 1)");
  if (a == 0.5) return std::pow(1.5, 2.0 / 3.0);
  return 4.0 * (a - 0.5) / (4.0 * a + 1.0);
}

double log_c_p(long long p) {
  if (p < 1) throw DomainError("log_c_p requires p >= 1");
  double pd = static_cast<double>(p);
  return (pd - 2.0) * std::log(3.0) + std::log(pd) + lgamma_pos(2.0 * pd + 1.0) -
         2.0 * lgamma_pos(pd + 1.0) - std::log(4.0 * std::sqrt(2.0 * M_PI));
}

namespace {

// phi(k) with b = binom32_coeff(k+1) already known (k >= 1).
double phi_from_coeff(long long k, double b) {
  double p = static_cast<double>(k + 1);
  // C_p / 12^p stays O(sqrt(p)); q_p * 12^p = b * 12^p / (24 sqrt 3).
  double c_over_12p = std::exp(log_c_p(k + 1) - p * std::log(12.0));
  return c_over_12p * 24.0 * kSqrt3 / b;
}

}  // namespace

double phi_weight(long long k) {
  if (k < 0) throw DomainError("phi_weight requires k >= 0");
  if (k == 0) {
    double c1 = std::exp(log_c_p(1));
    return c1 / (0.5 - kSqrt3 / 4.0);
  }
  return phi_from_coeff(k, binom32_coeff(k + 1));
}

std::vector<double> phi_weights(long long kmax) {
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1);
  out[0] = phi_weight(0);
  double b = binom32_coeff(2);
  for (long long k = 1; k <= kmax; ++k) {
    if (k > 1) b *= (k + 1 - 2.5) / (k + 1);
    out[static_cast<std::size_t>(k)] = phi_from_coeff(k, b);
  }
  return out;
}

double OffspringLaw::pgf(double z) const {
  switch (label) {
    case LawLabel::MuBlack: {
      // sum_j q_{j+1} z^j / Z = (W(r_c, z/12) * 12/z) / Z ... evaluate the
      // series directly instead; cutoff tail is O(z^K K^{-3/2}).
      break;
    }
    case LawLabel::MuWhite: {
      double xi = kGammaC / (kGammaC + 2.0 * a);
      return (1.0 - xi) / (1.0 - xi * z);
    }
    case LawLabel::Nu:
      return pgf_F(a, z);
    case LawLabel::NuTilted: {
      double lam = lambda_tilt(a);
      return pgf_F(a, lam * z) / pgf_F(a, lam);
    }
    case LawLabel::NuBar:
      return pgf_F_bar(a, z);
    default:
      break;
  }
  double acc = 0.0, comp = 0.0, zp = 1.0;
  for (double m : masses) {
    double term = m * zp - comp;
    double t = acc + term;
    comp = (t - acc) - term;
    acc = t;
    zp *= z;
  }
  return acc;
}

namespace {

// Kahan-compensated total of the mass table; returns 1 - sum.
double residual_mass(const std::vector<double>& m) {
  double acc = 0.0, comp = 0.0;
  for (double v : m) {
    double term = v - comp;
    double t = acc + term;
    comp = (t - acc) - term;
    acc = t;
  }
  return 1.0 - acc;
}

}  // namespace

OffspringLaw OffspringLaw::make_mu_black(std::size_t cutoff) {
  OffspringLaw law;
  law.label = LawLabel::MuBlack;
  law.masses.resize(cutoff + 1);
  double b = 1.0;  // binom32_coeff(j+1) rolling
  for (std::size_t j = 0; j <= cutoff; ++j) {
    long long k = static_cast<long long>(j) + 1;
    b = (k == 1) ? -1.5 : b * (k - 2.5) / k;
    double qv = b / (24.0 * kSqrt3);
    if (k == 1) qv += 1.0 / 24.0;
    law.masses[j] = qv / kZBlack;
  }
  law.tail_exponent = 1.5;
  law.tail_constant = 1.0 / (32.0 * std::sqrt(3.0 * M_PI)) / kZBlack;
  law.tail_mass = residual_mass(law.masses);
  law.mean = 1.0 / kGammaC;
  return law;
}

OffspringLaw OffspringLaw::make_mu_white(double a, std::size_t cutoff) {
  check_a_open01(a);
  OffspringLaw law;
  law.label = LawLabel::MuWhite;
  law.a = a;
  double xi = kGammaC / (kGammaC + 2.0 * a);
  law.masses.resize(cutoff + 1);
  double m = 1.0 - xi;
  for (std::size_t j = 0; j <= cutoff; ++j, m *= xi) law.masses[j] = m;
  law.tail_mass = residual_mass(law.masses);
  law.mean = kGammaC / (2.0 * a);
  return law;
}

OffspringLaw OffspringLaw::make_nu(double a, std::size_t cutoff) {
  check_a_open01(a);
  OffspringLaw law;
  law.label = LawLabel::Nu;
  law.a = a;
  double denom = kGammaC + 2.0 * a;
  law.masses.resize(cutoff + 1);
  law.masses[0] = 2.0 * a / denom;
  double b = 1.0;
  for (std::size_t k = 1; k <= cutoff; ++k) {
    b = (k == 1) ? -1.5 : b * (k - 2.5) / k;
    double v = b;
    if (k == 1) v += kSqrt3;
    law.masses[k] = v / denom;
  }
  law.tail_exponent = 1.5;
  law.tail_constant = 0.75 / std::sqrt(M_PI) / denom;  // b_k ~ 3/(4 sqrt(pi)) k^{-5/2}
  law.tail_mass = residual_mass(law.masses);
  law.mean = 1.0 / (1.0 + 2.0 * (a - 0.5) / kSqrt3);
  return law;
}

OffspringLaw OffspringLaw::make_nu_tilted(double a) {
  if (!(a > 0.0 && a < 0.5))
    throw DomainError("make_nu_tilted requires a in (0, 1/2)");
  double lam = lambda_tilt(a);
  double f = pgf_F(a, lam);
  OffspringLaw law;
  law.label = LawLabel::NuTilted;
  law.a = a;
  double denom = kGammaC + 2.0 * a;
  double lampow = 1.0;
  std::vector<double>& m = law.masses;
  m.push_back(2.0 * a / denom / f);
  double b = 1.0;
  for (std::size_t k = 1;; ++k) {
    b = (k == 1) ? -1.5 : b * (k - 2.5) / k;
    lampow *= lam;
    double v = b;
    if (k == 1) v += kSqrt3;
    double mass = v * lampow / (denom * f);
    m.push_back(mass);
    if (k > 8 && mass < 1e-18) break;
    if (k > 4000000) break;
  }
  law.tail_mass = residual_mass(law.masses);
  law.mean = 1.0;  // by construction of lambda
  return law;
}

OffspringLaw OffspringLaw::make_nu_bar(double a, std::size_t cutoff) {
  check_a_open01(a);
  OffspringLaw law;
  law.label = LawLabel::NuBar;
  law.a = a;
  double denom = 4.0 * a + 1.0;
  law.masses.resize(cutoff + 1);
  law.masses[0] = 4.0 * a / denom;
  double b = 1.0;
  for (std::size_t k = 1; k <= cutoff; ++k) {
    b = (k == 1) ? -1.5 : b * (k - 2.5) / k;
    double v = 2.0 * b;
    if (k == 1) v += 3.0;
    law.masses[k] = v / denom;
  }
  law.tail_exponent = 1.5;
  law.tail_constant = 1.5 / std::sqrt(M_PI) / denom;
  law.tail_mass = residual_mass(law.masses);
  law.mean = 3.0 / (1.0 + 4.0 * a);
  return law;
}

OffspringLaw OffspringLaw::make_custom(std::vector<double> masses) {
  OffspringLaw law;
  law.label = LawLabel::Custom;
  law.masses = std::move(masses);
  law.tail_mass = residual_mass(law.masses);
  double mean = 0.0;
  for (std::size_t k = 0; k < law.masses.size(); ++k)
    mean += static_cast<double>(k) * law.masses[k];
  law.mean = mean;
  return law;
}

}  // namespace looptrees
