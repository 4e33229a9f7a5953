#include "looptrees/metric.hpp"

#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include "doctest.h"
#include "looptrees/bijections.hpp"
#include "looptrees/planetree.hpp"
#include "looptrees/rng.hpp"
#include "looptrees/sampler.hpp"

using namespace looptrees;

namespace {

LoopGraph cycle_graph(std::uint32_t n) {
  LoopGraph g;
  g.vertex_count = n;
  for (std::uint32_t v = 0; v < n; ++v) g.edges.emplace_back(v, (v + 1) % n);
  g.cycle_lengths.push_back(n);
  return g;
}

LoopGraph path_graph(std::uint32_t n) {
  LoopGraph g;
  g.vertex_count = n;
  for (std::uint32_t v = 0; v + 1 < n; ++v) g.edges.emplace_back(v, v + 1);
  return g;
}

std::uint32_t brute_diameter(const LoopGraph& g) {
  auto adj = g.adjacency();
  std::uint32_t best = 0;
  for (std::size_t s = 0; s < g.vertex_count; ++s)
    for (auto d : bfs_distances(adj, s)) best = std::max(best, d);
  return best;
}

}  // namespace

TEST_CASE("bfs distances on tiny graphs") {
  LoopGraph single;
  single.vertex_count = 1;
  CHECK(bfs_distances(single, 0) == std::vector<std::uint32_t>{0});

  auto tri = cycle_graph(3);
  CHECK(bfs_distances(tri, 0) == std::vector<std::uint32_t>{0, 1, 1});

  LoopGraph dbl;
  dbl.vertex_count = 2;
  dbl.edges = {{0, 1}, {1, 0}};
  CHECK(bfs_distances(dbl, 0) == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("self-loops do not affect distances") {
  auto p = path_graph(4);
  p.edges.emplace_back(2, 2);
  auto d = bfs_distances(p, 0);
  CHECK(d == std::vector<std::uint32_t>{0, 1, 2, 3});
}

TEST_CASE("disconnected graphs are rejected") {
  LoopGraph g;
  g.vertex_count = 2;
  CHECK_THROWS_AS(bfs_distances(g, 0), Disconnected);
  CHECK_THROWS_AS(diameter(g), Disconnected);
}

TEST_CASE("diameter of cycles, paths and a small looptree") {
  for (std::uint32_t n : {3, 4, 5, 6, 9}) {
    CHECK(diameter(cycle_graph(n)) == n / 2);
    CHECK(diameter(path_graph(n)) == n - 1);
  }
  CHECK(diameter(loop_of(PlaneTree::parse_line("3 2 0 0"))) == 1);
}

TEST_CASE("diameter bounds against the tree metric") {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (const auto& s : enumerate_trees(n)) {
      auto d_loop = diameter(loop_of(s));
      CHECK(d_loop <= 2 * n);
      auto d_bar = diameter(loop_bar_of(s));
      std::uint32_t slack = 2 * s.height();
      CHECK(d_bar <= d_loop + slack);
      CHECK(d_loop <= d_bar + slack);
    }
  }
}

TEST_CASE("double-sweep bracket contains the exact diameter") {
  CounterRng rng(41);
  auto law = OffspringLaw::make_nu(0.5);
  ConditionedSampler cs(law, 3000);
  for (int rep = 0; rep < 5; ++rep) {
    auto g = loop_of(cs.sample(rng));
    auto exact = brute_diameter(g);
    auto bracket = diameter_bracket(g);
    CHECK(bracket.lower <= exact);
    CHECK(exact <= bracket.upper);
    CHECK(diameter(g) == exact);  // below the all-sources threshold
  }
}

TEST_CASE("large graphs fall back to the bracket lower bound") {
  CounterRng rng(43);
  auto law = OffspringLaw::make_nu(0.5);
  ConditionedSampler cs(law, 20000);
  auto g = loop_of(cs.sample(rng));
  auto bracket = diameter_bracket(g);
  CHECK(diameter(g) == bracket.lower);
  CHECK(bracket.lower >= 1);
  CHECK(bracket.lower <= bracket.upper);
}

TEST_CASE("max cycle fraction") {
  CHECK(max_cycle_fraction(cycle_graph(7)) == 1.0);
  CHECK(max_cycle_fraction(path_graph(3)) == 0.0);
  CHECK(max_cycle_fraction(loop_of(PlaneTree::parse_line("3 2 0 0"))) == 1.0);
  LoopGraph g;
  g.cycle_lengths = {2, 6, 4};
  CHECK(max_cycle_fraction(g) == 0.5);
}

TEST_CASE("necklace counts") {
  CHECK(necklace_count(0, 5) == 1);
  CHECK(necklace_count(1, 1) == 2);
  CHECK(necklace_count(8, 4) == 495);
  CHECK_THROWS_AS(necklace_count(0, 0), DomainError);
  for (std::uint64_t n : {3, 17, 120})
    for (std::uint64_t m : {1, 9, 250}) {
      CHECK(necklace_count(n, m) == necklace_count(m, n));
      CHECK(necklace_count(n, m) ==
            necklace_count(n - 1, m) + necklace_count(n, m - 1));
    }
}

TEST_CASE("power-law fits") {
  std::vector<std::pair<double, double>> pts;
  for (int k = 3; k <= 12; ++k) {
    double n = std::pow(2.0, k);
    pts.emplace_back(n, std::pow(n, -4.0 / 3.0));
  }
  auto fit = fit_exponent(pts);
  CHECK(fit.slope == doctest::Approx(-4.0 / 3.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.n_points == pts.size());

  for (auto& [n, v] : pts) v = 5.0;
  fit = fit_exponent(pts);
  CHECK(fit.slope == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0));

  for (auto& [n, v] : pts) v = 3.0 * n * n;
  fit = fit_exponent(pts);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("degenerate fit inputs are rejected") {
  using P = std::vector<std::pair<double, double>>;
  CHECK_THROWS_AS(fit_exponent(P{{1, 1}, {2, 2}}), DegenerateInput);
  CHECK_THROWS_AS(fit_exponent(P{{1, 1}, {2, -2}, {3, 3}}), DegenerateInput);
  CHECK_THROWS_AS(fit_exponent(P{{2, 1}, {2, 2}, {2, 3}}), DegenerateInput);
}
