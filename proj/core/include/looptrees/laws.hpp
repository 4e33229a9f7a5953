#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace looptrees {

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Closed-form model constants. Type I refers to general triangulations,
// type II to loopless ones.
struct ModelConstants {
  double r_c;          // 1/sqrt(432)
  double gamma;        // sqrt(3) - 1
  double z_black;      // gamma * r_c / 2
  double r_c_bar;      // 2/27
  double z_black_bar;  // 1/54

  double xi(double a) const { return gamma / (gamma + 2.0 * a); }
  double xi_bar(double a) const { return 1.0 / (1.0 + 4.0 * a); }
};

ModelConstants model_constants();

// (-1)^k * binom(3/2, k): the (nonnegative for k >= 2) Taylor coefficients
// of (1-z)^{3/2}. Stable multiplicative recurrence.
double binom32_coeff(long long k);

// Weight per boundary edge of a simple triangulation component, k >= 1.
double q_k(long long k);
// Type II analogue; q_bar_1 == 0.
double q_bar_k(long long k);

double mu_black(long long j);
double mu_white(double a, long long j);

double nu(double a, long long k);
double nu_bar(double a, long long k);

// Offspring pgf of nu_a and its first two derivatives, z in [0, 1].
double pgf_F(double a, double z);
double pgf_F_prime(double a, double z);
double pgf_F_second(double a, double z);
// Type II pgf.
double pgf_F_bar(double a, double z);

// Tilt parameter restoring criticality for a in (0, 1/2):
// lambda * F'(lambda) = F(lambda). Closed form via complex cube roots,
// cross-checked against bisection; falls back to bisection if the closed
// form leaves the unit interval.
double lambda_tilt(double a);
double lambda_tilt_closed(double a);
double lambda_tilt_bisect(double a);

// Tilted (critical) law for a in (0, 1/2).
double nu_tilted(double a, long long k);
// Variance of the tilted law: lambda^2 F''(lambda) / F(lambda).
double sigma_tilde_sq(double a);
// Mass of the even integers under the tilted law.
double nu_tilted_even_mass(double a);

// Scaling constant of the boundary limit shapes, a != 1/2.
double c_alpha(double a);
// Type II constant, a in [1/2, 1).
double c_alpha_type2(double a);

// Component-count weight phi(k) = C_{k+1} / (12^{k+1} q_{k+1}), k >= 0.
double phi_weight(long long k);
// phi(0..kmax) in one pass.
std::vector<double> phi_weights(long long kmax);
// log C_p of the n^{-5/2} r_c^{-n} asymptotics, p >= 1.
double log_c_p(long long p);

enum class LawLabel {
  MuBlack,
  MuWhite,
  Nu,
  NuTilted,
  NuBar,
  NuBarTilted,
  Custom,
};

// A probability mass function on {0,1,2,...} held as an explicit table up
// to a cutoff, plus analytic tail metadata for the heavy-tailed laws.
struct OffspringLaw {
  LawLabel label = LawLabel::Custom;
  double a = 0.5;
  std::vector<double> masses;   // index k -> P(k), k <= cutoff
  double tail_exponent = 0.0;   // pmf ~ tail_constant * k^{-1-tail_exponent}
  double tail_constant = 0.0;
  double tail_mass = 0.0;       // 1 - sum(masses), compensated
  double mean = 0.0;            // closed form where the label provides one

  std::size_t cutoff() const { return masses.empty() ? 0 : masses.size() - 1; }
  double mass(long long k) const {
    return (k >= 0 && k < static_cast<long long>(masses.size()))
               ? masses[static_cast<std::size_t>(k)]
               : 0.0;
  }
  // Closed-form pgf for labelled laws, truncated series for Custom.
  double pgf(double z) const;

  static OffspringLaw make_mu_black(std::size_t cutoff = 1000000);
  static OffspringLaw make_mu_white(double a, std::size_t cutoff = 4096);
  static OffspringLaw make_nu(double a, std::size_t cutoff = 1000000);
  static OffspringLaw make_nu_tilted(double a);
  static OffspringLaw make_nu_bar(double a, std::size_t cutoff = 1000000);
  static OffspringLaw make_custom(std::vector<double> masses);
};

}  // namespace looptrees
