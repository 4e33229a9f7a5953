#include "looptrees/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fftconv.hpp"
#include "looptrees/gamma.hpp"

namespace looptrees {

namespace {

struct AliasTable {
  std::vector<double> prob;
  std::vector<std::uint32_t> alias;

  void build(const std::vector<double>& w) {
    const std::size_t n = w.size();
    prob.assign(n, 0.0);
    alias.assign(n, 0);
    double total = 0.0;
    for (double v : w) total += v;
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i)
      scaled[i] = w[i] * static_cast<double>(n) / total;
    std::vector<std::uint32_t> small, large;
    small.reserve(n);
    large.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    while (!small.empty() && !large.empty()) {
      std::uint32_t s = small.back(), l = large.back();
      small.pop_back();
      prob[s] = scaled[s];
      alias[s] = l;
      scaled[l] -= 1.0 - scaled[s];
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (std::uint32_t i : large) prob[i] = 1.0;
    for (std::uint32_t i : small) prob[i] = 1.0;  // rounding leftovers
  }

  std::size_t draw(CounterRng& rng) const {
    std::size_t i = static_cast<std::size_t>(rng.next_below(prob.size()));
    return rng.next_double() < prob[i] ? i : alias[i];
  }
};

// Rotate a bridge (increments summing to n-1) at the first minimum of its
// walk, yielding a valid preorder degree sequence (cycle lemma).
std::vector<std::uint32_t> rotate_bridge(const std::vector<std::uint32_t>& x) {
  const std::size_t n = x.size();
  long long s = 0, best = std::numeric_limits<long long>::max();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    s += static_cast<long long>(x[i]) - 1;
    if (s < best) {
      best = s;
      arg = i + 1;
    }
  }
  arg %= n;
  std::vector<std::uint32_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x[(arg + i) % n];
  return out;
}

// Full mass table of the law on [0, kmax], regenerated from the label's
// closed form when the stored cutoff is too short.
std::vector<double> mass_table(const OffspringLaw& law, std::size_t kmax) {
  if (law.masses.size() > kmax)
    return std::vector<double>(law.masses.begin(),
                               law.masses.begin() + kmax + 1);
  switch (law.label) {
    case LawLabel::Nu:
      return OffspringLaw::make_nu(law.a, kmax).masses;
    case LawLabel::NuBar:
      return OffspringLaw::make_nu_bar(law.a, kmax).masses;
    case LawLabel::MuBlack:
      return OffspringLaw::make_mu_black(kmax).masses;
    case LawLabel::MuWhite:
      return OffspringLaw::make_mu_white(law.a, kmax).masses;
    default: {
      std::vector<double> m = law.masses;
      m.resize(kmax + 1, 0.0);
      return m;
    }
  }
}

double kahan_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  double acc = 0.0, comp = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    double term = v[i] - comp;
    double t = acc + term;
    comp = (t - acc) - term;
    acc = t;
  }
  return acc;
}

}  // namespace

LawSampler::LawSampler(const OffspringLaw& law) {
  cutoff_ = static_cast<long long>(law.masses.empty() ? 0 : law.masses.size() - 1);
  const bool analytic_tail = law.tail_exponent > 0.0 && law.tail_mass > 0.0;
  tail_exponent_ = analytic_tail ? law.tail_exponent : 0.0;
  std::vector<double> w = law.masses;
  if (analytic_tail) w.push_back(law.tail_mass);
  AliasTable t;
  t.build(w);
  prob_ = std::move(t.prob);
  alias_ = std::move(t.alias);
}

long long LawSampler::draw(CounterRng& rng) const {
  std::size_t i = static_cast<std::size_t>(rng.next_below(prob_.size()));
  long long k = static_cast<long long>(
      rng.next_double() < prob_[i] ? i : alias_[i]);
  if (tail_exponent_ > 0.0 && k == cutoff_ + 1) {
    // Pareto continuation beyond the table: survival (x/K)^{-alpha}.
    double u = rng.next_double();
    if (u <= 0.0) u = std::numeric_limits<double>::min();
    double x = static_cast<double>(cutoff_) *
               std::pow(u, -1.0 / tail_exponent_);
    double capped = std::min(x, 9.0e18);
    k = static_cast<long long>(std::floor(capped)) + 1;
  }
  return k;
}

std::optional<PlaneTree> sample_gw(const LawSampler& ls, std::size_t size_cap,
                                   CounterRng& rng) {
  std::vector<std::uint32_t> deg;
  deg.reserve(64);
  long long open = 1;
  while (open > 0) {
    if (deg.size() >= size_cap) return std::nullopt;
    long long k = ls.draw(rng);
    deg.push_back(static_cast<std::uint32_t>(
        std::min<long long>(k, std::numeric_limits<std::uint32_t>::max())));
    open += k - 1;
  }
  return PlaneTree::unchecked(std::move(deg));
}

std::optional<PlaneTree> sample_gw(const OffspringLaw& law,
                                   std::size_t size_cap, CounterRng& rng) {
  LawSampler ls(law);
  return sample_gw(ls, size_cap, rng);
}

struct ConditionedSampler::Impl {
  std::size_t n = 0;
  long long s = 0;  // n - 1, the required increment total

  enum class Mode { Single, Rejection, Decomposed } mode = Mode::Rejection;

  // Rejection path: alias over increments 0..s plus one abort bucket for
  // the (impossible-under-acceptance) event of an increment above s.
  AliasTable table;
  std::size_t abort_bucket = 0;

  // Decomposition path (non-tiltable means): increments split at B into a
  // bounded body and rare large values.
  long long B = 0;
  std::vector<double> bodyn;                  // body/p_b on [0, B]
  std::vector<double> weight;                 // P(S_n = s, J = j), j = 0..jcap
  std::vector<std::vector<double>> jump_pow;  // (jump/p_j)^{*i}, window [0,s]
  std::vector<std::vector<double>> t_prefix;  // cumulative t-weights per j
  double walk_mass = -1.0;
  double weight_total = 0.0;  // sum of retained weights, used for draws

  void setup_rejection(const std::vector<double>& mass);
  void setup_decomposed(const std::vector<double>& mass);
  PlaneTree sample_rejection(CounterRng& rng) const;
  PlaneTree sample_decomposed(CounterRng& rng) const;
  std::vector<std::uint32_t> sample_body_conditioned(std::size_t m,
                                                     long long total,
                                                     CounterRng& rng) const;
};

void ConditionedSampler::Impl::setup_rejection(
    const std::vector<double>& mass) {
  mode = Mode::Rejection;
  if (mass[0] <= 0.0)
    throw ZeroProbability("law has no mass at 0; finite trees unreachable");
  if (!(mass.size() > 1 && mass[1] > 0.0)) {
    // No unit step: check s is a sum of the available increments.
    bool two = mass.size() > 2 && mass[2] > 0.0;
    bool three = mass.size() > 3 && mass[3] > 0.0;
    if (two && three) {
      if (s == 1) throw ZeroProbability("size unreachable under law support");
    } else {
      std::vector<char> ok(static_cast<std::size_t>(s) + 1, 0);
      ok[0] = 1;
      for (long long k = 2; k <= s && k < (long long)mass.size(); ++k) {
        if (mass[k] <= 0.0) continue;
        for (long long v = k; v <= s; ++v) ok[v] |= ok[v - k];
      }
      if (!ok[s]) throw ZeroProbability("size unreachable under law support");
    }
  }
  std::vector<double> w(mass.begin(),
                        mass.begin() + std::min<std::size_t>(mass.size(), s + 1));
  double covered = kahan_sum(w, 0, w.size());
  abort_bucket = w.size();
  w.push_back(std::max(0.0, 1.0 - covered));
  table.build(w);
}

void ConditionedSampler::Impl::setup_decomposed(
    const std::vector<double>& mass) {
  mode = Mode::Decomposed;
  B = std::max<long long>(
      8, static_cast<long long>(std::llround(std::pow(double(n), 2.0 / 3.0))));
  if (B >= s) B = s - 1;
  if (B < 1) B = 1;
  const std::size_t W = static_cast<std::size_t>(s) + 1;
  double pb = kahan_sum(mass, 0, static_cast<std::size_t>(B) + 1);
  double pj = kahan_sum(mass, static_cast<std::size_t>(B) + 1, W);
  bodyn.assign(mass.begin(), mass.begin() + B + 1);
  for (double& v : bodyn) v /= pb;
  std::vector<double> jumpn(W, 0.0);
  if (pj > 0.0)
    for (std::size_t k = B + 1; k < W; ++k) jumpn[k] = mass[k] / pj;

  long long jcap =
      pj > 0.0 ? std::min<long long>(32, s / (B + 1)) : 0;

  // body^{*(n-jcap)} by binary exponentiation, then step up to n.
  std::vector<std::vector<double>> bods(static_cast<std::size_t>(jcap) + 1);
  {
    std::vector<double> acc{1.0};
    std::vector<double> pw = bodyn;
    std::size_t e = n - static_cast<std::size_t>(jcap);
    while (e > 0) {
      if (e & 1) acc = detail::convolve(acc, pw, W);
      e >>= 1;
      if (e) pw = detail::convolve(pw, pw, W);
    }
    bods[static_cast<std::size_t>(jcap)] = std::move(acc);
  }
  for (long long j = jcap - 1; j >= 0; --j)
    bods[j] = detail::convolve(bods[j + 1], bodyn, W);

  jump_pow.assign(static_cast<std::size_t>(jcap) + 1, {});
  if (jcap >= 1) jump_pow[1] = jumpn;
  for (long long i = 2; i <= jcap; ++i)
    jump_pow[i] = detail::convolve(jump_pow[i - 1], jumpn, W);

  weight.assign(static_cast<std::size_t>(jcap) + 1, 0.0);
  t_prefix.assign(static_cast<std::size_t>(jcap) + 1, {});
  const double lpb = std::log(pb);
  const double lpj = pj > 0.0 ? std::log(pj) : 0.0;
  for (long long j = 0; j <= jcap; ++j) {
    double inner;
    if (j == 0) {
      inner = bods[0][s];
    } else {
      double acc = 0.0;
      const auto& jp = jump_pow[j];
      const auto& bd = bods[j];
      for (long long t = j * (B + 1); t <= s; ++t)
        acc += jp[t] * bd[s - t];
      inner = acc;
    }
    if (inner <= 0.0) continue;
    double lw = log_binom(static_cast<long long>(n), j) + j * lpj +
                (static_cast<long long>(n) - j) * lpb;
    weight[j] = std::exp(lw) * inner;
  }
  walk_mass = kahan_sum(weight, 0, weight.size());
  if (!(walk_mass > 0.0))
    throw ZeroProbability("size has zero probability under law");

  double wmax = *std::max_element(weight.begin(), weight.end());
  long long jkeep = 0;
  for (long long j = 0; j <= jcap; ++j) {
    if (weight[j] < 1e-16 * wmax) {
      weight[j] = 0.0;
      continue;
    }
    jkeep = std::max(jkeep, j);
    if (j >= 1) {
      std::vector<double> pre(W, 0.0);
      const auto& jp = jump_pow[j];
      const auto& bd = bods[j];
      double run = 0.0;
      for (long long t = 0; t <= s; ++t) {
        if (t >= j * (B + 1)) run += jp[t] * bd[s - t];
        pre[t] = run;
      }
      t_prefix[j] = std::move(pre);
    }
  }
  for (long long i = jkeep + 1; i <= jcap; ++i) jump_pow[i].clear();
  weight_total = kahan_sum(weight, 0, weight.size());
}

std::vector<std::uint32_t> ConditionedSampler::Impl::sample_body_conditioned(
    std::size_t m, long long total, CounterRng& rng) const {
  std::vector<std::uint32_t> vals(m, 0);
  if (m == 0 || total == 0) {
    if (total != 0)
      throw ZeroProbability("internal: empty body with nonzero total");
    return vals;
  }
  // Tilt the body toward mean total/m. Any tilt leaves the conditional law
  // untouched; the choice only drives acceptance speed.
  const long long Bv = static_cast<long long>(bodyn.size()) - 1;
  double target = static_cast<double>(total) / static_cast<double>(m);
  double lo = -60.0, hi = 60.0;
  auto mean_at = [&](double th) {
    double mx = -std::numeric_limits<double>::infinity();
    for (long long k = 0; k <= Bv; ++k)
      if (bodyn[k] > 0.0) mx = std::max(mx, std::log(bodyn[k]) + th * k);
    double z = 0.0, zk = 0.0;
    for (long long k = 0; k <= Bv; ++k) {
      if (bodyn[k] <= 0.0) continue;
      double e = std::exp(std::log(bodyn[k]) + th * k - mx);
      z += e;
      zk += e * k;
    }
    return zk / z;
  };
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (mean_at(mid) < target ? lo : hi) = mid;
  }
  double theta = 0.5 * (lo + hi);
  std::vector<double> tw(Bv + 1, 0.0);
  double mx = -std::numeric_limits<double>::infinity();
  for (long long k = 0; k <= Bv; ++k)
    if (bodyn[k] > 0.0) mx = std::max(mx, std::log(bodyn[k]) + theta * k);
  for (long long k = 0; k <= Bv; ++k)
    if (bodyn[k] > 0.0) tw[k] = std::exp(std::log(bodyn[k]) + theta * k - mx);
  AliasTable at;
  at.build(tw);
  for (long long attempt = 0; attempt < (1LL << 40); ++attempt) {
    long long sum = 0;
    std::size_t i = 0;
    for (; i < m; ++i) {
      long long v = static_cast<long long>(at.draw(rng));
      vals[i] = static_cast<std::uint32_t>(v);
      sum += v;
      if (sum > total) break;
    }
    if (i == m && sum == total) return vals;
  }
  throw ZeroProbability("body rejection failed to terminate");
}

PlaneTree ConditionedSampler::Impl::sample_rejection(CounterRng& rng) const {
  std::vector<std::uint32_t> x(n);
  for (;;) {
    long long sum = 0;
    std::size_t i = 0;
    for (; i < n; ++i) {
      std::size_t k = table.draw(rng);
      if (k == abort_bucket) break;
      x[i] = static_cast<std::uint32_t>(k);
      sum += static_cast<long long>(k);
      if (sum > s) break;
    }
    if (i == n && sum == s)
      return PlaneTree::unchecked(rotate_bridge(x));
  }
}

PlaneTree ConditionedSampler::Impl::sample_decomposed(CounterRng& rng) const {
  // Split count j, then the large-value total t, then the individual large
  // values, then the bounded remainder conditioned on its total.
  double u = rng.next_double() * weight_total;
  std::size_t j = 0;
  for (; j + 1 < weight.size(); ++j) {
    if (u < weight[j]) break;
    u -= weight[j];
  }
  while (j > 0 && weight[j] == 0.0) --j;  // float-edge guard
  long long t = 0;
  std::vector<long long> jumps_v;
  if (j >= 1) {
    const auto& pre = t_prefix[j];
    double ut = rng.next_double() * pre.back();
    t = static_cast<long long>(
        std::upper_bound(pre.begin(), pre.end(), ut) - pre.begin());
    if (t > s) t = s;
    long long rem = t;
    for (std::size_t i = j; i >= 2; --i) {
      const auto& rest = jump_pow[i - 1];
      long long ylo = B + 1;
      long long yhi = rem - static_cast<long long>(i - 1) * (B + 1);
      double tot = 0.0;
      for (long long y = ylo; y <= yhi; ++y)
        tot += jump_pow[1][y] * rest[rem - y];
      double uy = rng.next_double() * tot;
      long long y = yhi;
      for (long long cand = ylo; cand <= yhi; ++cand) {
        uy -= jump_pow[1][cand] * rest[rem - cand];
        if (uy < 0.0) {
          y = cand;
          break;
        }
      }
      jumps_v.push_back(y);
      rem -= y;
    }
    jumps_v.push_back(rem);
  }
  std::vector<std::uint32_t> body =
      sample_body_conditioned(n - j, s - t, rng);

  // Scatter the large values over j uniform distinct positions.
  std::vector<std::size_t> pos;
  for (std::size_t i = n - j; i < n; ++i) {
    std::size_t r = static_cast<std::size_t>(rng.next_below(i + 1));
    if (std::find(pos.begin(), pos.end(), r) != pos.end())
      pos.push_back(i);
    else
      pos.push_back(r);
  }
  std::sort(pos.begin(), pos.end());
  std::vector<std::uint32_t> x(n);
  std::size_t bi = 0, ji = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (ji < pos.size() && pos[ji] == i)
      x[i] = static_cast<std::uint32_t>(jumps_v[ji++]);
    else
      x[i] = body[bi++];
  }
  return PlaneTree::unchecked(rotate_bridge(x));
}

ConditionedSampler::ConditionedSampler(const OffspringLaw& law, std::size_t n)
    : n_(n), impl_(std::make_unique<Impl>()) {
  if (n == 0) throw ZeroProbability("n must be at least 1");
  impl_->n = n;
  impl_->s = static_cast<long long>(n) - 1;
  if (n == 1) {
    if (!(law.mass(0) > 0.0))
      throw ZeroProbability("law has no mass at 0");
    impl_->mode = Impl::Mode::Single;
    return;
  }
  if (law.label == LawLabel::Nu && law.a < 0.5) {
    // The conditioned tree law is invariant under exponential tilting;
    // tilt to criticality so plain rejection is feasible.
    OffspringLaw tilted = OffspringLaw::make_nu_tilted(law.a);
    impl_->setup_rejection(mass_table(tilted, static_cast<std::size_t>(impl_->s)));
    return;
  }
  std::vector<double> mass = mass_table(law, static_cast<std::size_t>(impl_->s));
  double mean = 0.0;
  for (std::size_t k = 0; k < mass.size(); ++k)
    mean += static_cast<double>(k) * mass[k];
  double table_mass = kahan_sum(mass, 0, mass.size());
  bool critical = std::abs(law.mean - 1.0) < 1e-9 ||
                  (law.mean == 0.0 && std::abs(mean - 1.0) < 1e-6);
  (void)table_mass;
  if (critical)
    impl_->setup_rejection(mass);
  else
    impl_->setup_decomposed(mass);
}

ConditionedSampler::~ConditionedSampler() = default;
ConditionedSampler::ConditionedSampler(ConditionedSampler&&) noexcept = default;

PlaneTree ConditionedSampler::sample(CounterRng& rng) const {
  switch (impl_->mode) {
    case Impl::Mode::Single:
      return PlaneTree::unchecked({0});
    case Impl::Mode::Rejection:
      return impl_->sample_rejection(rng);
    case Impl::Mode::Decomposed:
      return impl_->sample_decomposed(rng);
  }
  throw ZeroProbability("unreachable");
}

double ConditionedSampler::conditioned_walk_mass() const {
  return impl_->walk_mass;
}

PlaneTree sample_gw_conditioned(const OffspringLaw& law, std::size_t n,
                                CounterRng& rng) {
  ConditionedSampler cs(law, n);
  return cs.sample(rng);
}

}  // namespace looptrees
