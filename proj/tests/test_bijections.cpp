#include "looptrees/bijections.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "doctest.h"
#include "looptrees/laws.hpp"
#include "looptrees/metric.hpp"
#include "looptrees/planetree.hpp"
#include "looptrees/rng.hpp"
#include "looptrees/sampler.hpp"

using namespace looptrees;

namespace {

PlaneTree make(std::initializer_list<std::uint32_t> degs) {
  return PlaneTree::from_preorder_degrees(std::vector<std::uint32_t>(degs));
}

std::vector<std::vector<std::uint32_t>> all_pairs(const LoopGraph& g) {
  auto adj = g.adjacency();
  std::vector<std::vector<std::uint32_t>> d;
  d.reserve(g.vertex_count);
  for (std::size_t s = 0; s < g.vertex_count; ++s)
    d.push_back(bfs_distances(adj, s));
  return d;
}

// Distance matrices of the boundary graph and of the contracted looptree of
// the image must agree under the white-vertex-to-leaf correspondence.
void check_boundary_equivalence(const TwoTypeTree& t) {
  auto boundary = boundary_from_components(t);
  auto mapped = js_forward_mapped(t);
  std::vector<std::uint32_t> class_of;
  auto bar = loop_bar_of(mapped.image, &class_of);
  REQUIRE(boundary.vertex_count == bar.vertex_count);

  const std::size_t n = t.tree.size();
  std::vector<std::uint32_t> white_to_class;
  white_to_class.reserve(boundary.vertex_count);
  const auto& img_degs = mapped.image.degrees();
  for (std::size_t v = 0; v < n; ++v) {
    if (!t.is_white(v)) continue;
    REQUIRE(img_degs[mapped.vertex_to_image[v]] == 0);
    white_to_class.push_back(class_of[mapped.vertex_to_image[v]]);
  }

  auto db = all_pairs(boundary);
  auto dl = all_pairs(bar);
  for (std::size_t i = 0; i < white_to_class.size(); ++i)
    for (std::size_t j = 0; j < white_to_class.size(); ++j)
      REQUIRE(db[i][j] == dl[white_to_class[i]][white_to_class[j]]);
}

}  // namespace

TEST_CASE("forward map on hand examples") {
  CHECK(js_forward(as_two_type(make({0}))) == make({0}));
  // root with one black leaf -> path of two vertices
  CHECK(js_forward(as_two_type(make({1, 0}))) == make({1, 0}));
  // root with two black leaves -> chain of three
  CHECK(js_forward(as_two_type(make({2, 0, 0}))) == make({1, 1, 0}));
  // one black vertex with two white leaves -> star with three leaves
  CHECK(js_forward(as_two_type(make({1, 2, 0, 0}))) == make({3, 0, 0, 0}));
}

TEST_CASE("forward map preserves size and swaps types for degrees") {
  CounterRng rng(31);
  auto law = OffspringLaw::make_nu(0.5);
  ConditionedSampler cs(law, 150);
  for (int rep = 0; rep < 50; ++rep) {
    auto t = as_two_type(cs.sample(rng));
    auto m = js_forward_mapped(t);
    REQUIRE(m.image.size() == t.tree.size());
    CHECK_NOTHROW(PlaneTree::from_preorder_degrees(m.image.degrees()));
    auto degs = t.tree.degrees();
    for (std::size_t v = 0; v < degs.size(); ++v) {
      std::uint32_t img_deg = m.image.degrees()[m.vertex_to_image[v]];
      if (t.is_white(v))
        CHECK(img_deg == 0);
      else
        CHECK(img_deg == degs[v] + 1);
    }
  }
}

TEST_CASE("round trip identity on all small trees") {
  for (std::size_t n = 1; n <= 9; ++n) {
    for (const auto& s : enumerate_trees(n)) {
      CHECK(js_forward(js_inverse(s)) == s);
      CHECK(js_inverse(js_forward(as_two_type(s))).tree == s);
    }
  }
}

TEST_CASE("pulled-back tree weights match the one-type law") {
  for (double a : {0.2, 0.5, 0.8}) {
    for (std::size_t n = 1; n <= 7; ++n) {
      for (const auto& s : enumerate_trees(n)) {
        double p_one = 1.0;
        for (auto k : s.degrees()) p_one *= nu(a, k);
        auto t = js_inverse(s);
        double p_two = 1.0;
        const auto& degs = t.tree.degrees();
        for (std::size_t v = 0; v < degs.size(); ++v)
          p_two *= t.is_white(v) ? mu_white(a, degs[v]) : mu_black(degs[v]);
        CHECK(p_two == doctest::Approx(p_one).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("looptree hand examples") {
  auto g0 = loop_of(make({0}));
  CHECK(g0.vertex_count == 1);
  CHECK(g0.edges.empty());
  CHECK(g0.cycle_lengths.empty());

  auto tri = loop_of(make({2, 0, 0}));
  CHECK(tri.vertex_count == 3);
  REQUIRE(tri.edges.size() == 3);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> want{
      {0, 1}, {1, 2}, {2, 0}};
  CHECK(tri.edges == want);
  CHECK(tri.cycle_lengths == std::vector<std::uint32_t>{3});

  auto dbl = loop_of(make({1, 0}));
  CHECK(dbl.vertex_count == 2);
  REQUIRE(dbl.edges.size() == 2);
  CHECK(dbl.edges[0] == std::pair<std::uint32_t, std::uint32_t>{0, 1});
  CHECK(dbl.edges[1] == std::pair<std::uint32_t, std::uint32_t>{1, 0});
}

TEST_CASE("looptree degrees count two per incident cycle") {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (const auto& s : enumerate_trees(n)) {
      auto g = loop_of(s);
      std::vector<std::uint32_t> deg(g.vertex_count, 0);
      for (const auto& [u, v] : g.edges) {
        deg[u] += 1;
        deg[v] += 1;  // a self-loop hits the same slot twice
      }
      const auto& degs = s.degrees();
      for (std::size_t v = 0; v < n; ++v) {
        std::uint32_t cycles = (degs[v] > 0 ? 1 : 0) + (v > 0 ? 1 : 0);
        CHECK(deg[v] == 2 * cycles);
      }
    }
  }
}

TEST_CASE("contracted looptree hand examples and invariants") {
  auto g0 = loop_bar_of(make({0}));
  CHECK(g0.vertex_count == 1);
  CHECK(g0.edges.empty());

  std::vector<std::uint32_t> cls;
  auto g = loop_bar_of(make({2, 0, 0}), &cls);
  CHECK(g.vertex_count == 2);
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0] == std::pair<std::uint32_t, std::uint32_t>{1, 0});
  CHECK(g.edges[1] == std::pair<std::uint32_t, std::uint32_t>{0, 1});
  CHECK(g.cycle_lengths == std::vector<std::uint32_t>{2});
  CHECK(cls == std::vector<std::uint32_t>{1, 0, 1});  // root merged into c2

  // black-leaf double edge collapses to a retained self-loop
  auto sl = loop_bar_of(make({1, 0}));
  CHECK(sl.vertex_count == 1);
  REQUIRE(sl.edges.size() == 1);
  CHECK(sl.edges[0].first == sl.edges[0].second);

  for (std::size_t n = 2; n <= 8; ++n) {
    for (const auto& s : enumerate_trees(n)) {
      auto bar = loop_bar_of(s);
      std::size_t leaves = 0;
      for (auto k : s.degrees())
        if (k == 0) ++leaves;
      CHECK(bar.vertex_count == leaves);
      std::uint64_t total = 0;
      for (auto c : bar.cycle_lengths) total += c;
      CHECK(total == n - 1);
    }
  }
}

TEST_CASE("boundary graph hand examples and perimeter invariant") {
  CHECK_THROWS_AS(boundary_from_components(as_two_type(make({0}))),
                  HullConstraint);

  auto sl = boundary_from_components(as_two_type(make({1, 0})));
  CHECK(sl.vertex_count == 1);
  REQUIRE(sl.edges.size() == 1);
  CHECK(sl.edges[0] == std::pair<std::uint32_t, std::uint32_t>{0, 0});
  CHECK(sl.cycle_lengths == std::vector<std::uint32_t>{1});

  auto tri = boundary_from_components(as_two_type(make({1, 2, 0, 0})));
  CHECK(tri.vertex_count == 3);
  CHECK(tri.edges.size() == 3);
  CHECK(tri.cycle_lengths == std::vector<std::uint32_t>{3});

  for (std::size_t n = 2; n <= 8; ++n) {
    for (const auto& s : enumerate_trees(n)) {
      auto t = as_two_type(s);
      auto g = boundary_from_components(t);
      CHECK(g.vertex_count == t.white_count);
      std::uint64_t total = 0;
      for (auto c : g.cycle_lengths) total += c;
      CHECK(total == n - 1);
    }
  }
}

TEST_CASE("boundary graph equals contracted looptree of the image, small") {
  for (std::size_t n = 2; n <= 8; ++n)
    for (const auto& s : enumerate_trees(n))
      check_boundary_equivalence(as_two_type(s));
}

TEST_CASE("boundary graph equals contracted looptree of the image, random") {
  CounterRng rng(37);
  auto law = OffspringLaw::make_nu(0.5);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t n = 2 + rng.next_below(199);
    check_boundary_equivalence(as_two_type(sample_gw_conditioned(law, n, rng)));
  }
}
