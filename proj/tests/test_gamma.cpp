#include "looptrees/gamma.hpp"

#include <cmath>
#include <initializer_list>

#include "doctest.h"

using looptrees::gamma_fn;
using looptrees::lgamma_pos;
using looptrees::log_binom;

TEST_CASE("gamma at integers and halves") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(gamma_fn(1.5) == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-14));
}

TEST_CASE("recurrence Gamma(z+1) = z Gamma(z) on a grid") {
  for (double z = 0.05; z < 8.0; z += 0.173) {
    CHECK(gamma_fn(z + 1.0) == doctest::Approx(z * gamma_fn(z)).epsilon(5e-14));
  }
}

TEST_CASE("reflection and negative arguments") {
  // Gamma(-2/3) = -(3/2) Gamma(1/3) via two recurrence steps.
  double g13 = gamma_fn(1.0 / 3.0);
  CHECK(gamma_fn(-2.0 / 3.0) ==
        doctest::Approx(-1.5 * g13).epsilon(1e-12));
  // Gamma(-3/2) = 4 sqrt(pi) / 3.
  CHECK(gamma_fn(-1.5) ==
        doctest::Approx(4.0 * std::sqrt(M_PI) / 3.0).epsilon(1e-12));
  for (double z = 0.07; z < 0.5; z += 0.06) {
    CHECK(gamma_fn(z) * gamma_fn(1.0 - z) ==
          doctest::Approx(M_PI / std::sin(M_PI * z)).epsilon(5e-14));
  }
}

TEST_CASE("lgamma_pos tracks log of gamma and large factorials") {
  for (double z : {0.5, 1.0, 3.25, 7.0, 20.0}) {
    CHECK(lgamma_pos(z) ==
          doctest::Approx(std::log(gamma_fn(z))).epsilon(1e-13));
  }
  CHECK(lgamma_pos(1001.0) == doctest::Approx(std::lgamma(1001.0)).epsilon(1e-13));
  CHECK(lgamma_pos(32769.0) ==
        doctest::Approx(std::lgamma(32769.0)).epsilon(1e-13));
}

TEST_CASE("log_binom against exact small binomials") {
  CHECK(std::exp(log_binom(8, 4)) == doctest::Approx(70.0).epsilon(1e-12));
  CHECK(std::exp(log_binom(12, 5)) == doctest::Approx(792.0).epsilon(1e-12));
  CHECK(std::exp(log_binom(5, 0)) == doctest::Approx(1.0).epsilon(1e-12));
}
