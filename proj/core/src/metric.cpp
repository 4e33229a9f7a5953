#include "looptrees/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace looptrees {

namespace {

constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

}  // namespace

std::vector<std::uint32_t> bfs_distances(
    const std::vector<std::vector<std::uint32_t>>& adj, std::size_t source) {
  std::vector<std::uint32_t> dist(adj.size(), kUnseen);
  std::vector<std::uint32_t> queue;
  queue.reserve(adj.size());
  dist[source] = 0;
  queue.push_back(static_cast<std::uint32_t>(source));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint32_t v = queue[head];
    for (std::uint32_t w : adj[v]) {
      if (dist[w] != kUnseen) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  if (queue.size() != adj.size())
    throw Disconnected("graph is not connected");
  return dist;
}

std::vector<std::uint32_t> bfs_distances(const LoopGraph& g,
                                         std::size_t source) {
  return bfs_distances(g.adjacency(), source);
}

DiameterBracket diameter_bracket(const LoopGraph& g) {
  if (g.vertex_count <= 1) return {0, 0};
  auto adj = g.adjacency();
  DiameterBracket out{0, kUnseen};
  std::uint32_t source = 0;
  for (int round = 0; round < 8; ++round) {
    auto dist = bfs_distances(adj, source);
    std::uint32_t far = 0, ecc = 0;
    for (std::uint32_t v = 0; v < dist.size(); ++v)
      if (dist[v] > ecc) ecc = dist[v], far = v;
    out.lower = std::max(out.lower, ecc);
    out.upper = std::min(out.upper, 2 * ecc);
    if (out.lower == out.upper || far == source) break;
    source = far;
  }
  return out;
}

std::uint32_t diameter(const LoopGraph& g) {
  if (g.vertex_count <= 1) return 0;
  if (g.vertex_count > 10000) return diameter_bracket(g).lower;
  auto adj = g.adjacency();
  std::uint32_t best = 0;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    auto dist = bfs_distances(adj, s);
    for (std::uint32_t d : dist) best = std::max(best, d);
  }
  return best;
}

double max_cycle_fraction(const LoopGraph& g) {
  if (g.cycle_lengths.empty()) return 0.0;
  std::uint64_t total = 0, mx = 0;
  for (std::uint32_t c : g.cycle_lengths) {
    total += c;
    mx = std::max<std::uint64_t>(mx, c);
  }
  return static_cast<double>(mx) / static_cast<double>(total);
}

boost::multiprecision::cpp_int necklace_count(std::uint64_t n,
                                              std::uint64_t m) {
  if (n == 0 && m == 0)
    throw DomainError("necklace_count requires n + m > 0");
  std::uint64_t k = std::min(n, m);
  boost::multiprecision::cpp_int out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out *= n + m - k + i;
    out /= i;  // exact: out is binom(n+m-k+i, i) after this step
  }
  return out;
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw DegenerateInput("fit_exponent needs at least 3 points");
  const std::size_t m = points.size();
  std::vector<double> xs(m), ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (points[i].first <= 0.0 || points[i].second <= 0.0)
      throw DegenerateInput("fit_exponent needs positive coordinates");
    xs[i] = std::log(points[i].first);
    ys[i] = std::log(points[i].second);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) mx += xs[i], my += ys[i];
  mx /= m, my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw DegenerateInput("fit_exponent abscissae coincide");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = syy - fit.slope * sxy;
  // A constant series leaves syy at rounding-noise level; report a perfect
  // fit rather than 0/0.
  fit.r_squared = syy > 1e-18 * static_cast<double>(m)
                      ? std::max(0.0, 1.0 - ss_res / syy)
                      : 1.0;
  fit.n_points = m;
  return fit;
}

}  // namespace looptrees
