#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "looptrees/laws.hpp"
#include "looptrees/loopgraph.hpp"

namespace looptrees {

struct Disconnected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Hop counts from source; self-loops never matter. Throws Disconnected if
// some vertex is unreachable. The adjacency overload lets callers amortize
// the neighbor-list build across many sources.
std::vector<std::uint32_t> bfs_distances(const LoopGraph& g,
                                         std::size_t source);
std::vector<std::uint32_t> bfs_distances(
    const std::vector<std::vector<std::uint32_t>>& adj, std::size_t source);

// Exact for graphs up to 10^4 vertices (all-sources BFS); above that,
// returns the lower end of diameter_bracket (iterated double sweep).
std::uint32_t diameter(const LoopGraph& g);

// Certified bounds: lower = best eccentricity found by repeated double
// sweeps, upper = twice the smallest eccentricity seen.
struct DiameterBracket {
  std::uint32_t lower = 0;
  std::uint32_t upper = 0;
};
DiameterBracket diameter_bracket(const LoopGraph& g);

// max(cycle_lengths) / sum(cycle_lengths); 0 for a graph with no cycles.
double max_cycle_fraction(const LoopGraph& g);

// binom(n+m, n), exact. Throws DomainError when n = m = 0.
boost::multiprecision::cpp_int necklace_count(std::uint64_t n,
                                              std::uint64_t m);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

// Least squares of log(value) against log(n) for points (n, value).
// Throws DegenerateInput on fewer than 3 points, non-positive entries, or
// coincident abscissae.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& points);

}  // namespace looptrees
