#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "looptrees/laws.hpp"
#include "looptrees/planetree.hpp"
#include "looptrees/rng.hpp"

namespace looptrees {

struct ZeroProbability : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Alias-method draw from an OffspringLaw table, continued by an analytic
// Pareto tail beyond the cutoff when the law carries k^{-1-alpha} metadata.
class LawSampler {
 public:
  explicit LawSampler(const OffspringLaw& law);
  long long draw(CounterRng& rng) const;

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
  long long cutoff_;
  double tail_exponent_;  // 0 when the tail bucket is absent
};

// Unconditioned Galton-Watson tree; nullopt when generation passes size_cap
// (covers both a subcritical cap breach and a supercritical explosion).
// The LawSampler overload amortizes the alias-table build across draws.
std::optional<PlaneTree> sample_gw(const LawSampler& sampler,
                                   std::size_t size_cap, CounterRng& rng);
std::optional<PlaneTree> sample_gw(const OffspringLaw& law,
                                   std::size_t size_cap, CounterRng& rng);

// Galton-Watson tree conditioned on exactly n vertices. Exact in
// distribution for every regime of the nu family:
//   - critical laws: i.i.d. increments, reject until they sum to n-1,
//     rotate at the first minimum of the bridge walk;
//   - nu with a < 1/2: exponential tilt to criticality first (the
//     conditioned law is tilt-invariant), then as above;
//   - nu with a > 1/2 (heavy-tailed, condensation): decompose by the number
//     of increments above a cutoff, with the exact split-count/large-value
//     marginals computed from windowed convolution powers; the bounded
//     remainder is tilted to the residual mean and rejection-sampled.
// Precomputes tables once; sample() is cheap and reusable.
class ConditionedSampler {
 public:
  ConditionedSampler(const OffspringLaw& law, std::size_t n);
  ~ConditionedSampler();
  ConditionedSampler(ConditionedSampler&&) noexcept;

  PlaneTree sample(CounterRng& rng) const;

  std::size_t n() const { return n_; }
  // P(S_n = n-1) under the (possibly tilted) sampling law; available only
  // when the convolution tables were built (the a > 1/2 path).
  double conditioned_walk_mass() const;

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

PlaneTree sample_gw_conditioned(const OffspringLaw& law, std::size_t n,
                                CounterRng& rng);

}  // namespace looptrees
