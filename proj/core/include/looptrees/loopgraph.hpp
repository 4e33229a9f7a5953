#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace looptrees {

// Multigraph with unit-length edges; self-loops allowed. cycle_lengths
// records the face structure the graph was built from (one entry per
// loop/cycle), which the metric experiments read directly.
struct LoopGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint32_t> cycle_lengths;

  // Neighbor lists with self-loops dropped (they never affect distances).
  std::vector<std::vector<std::uint32_t>> adjacency() const;
};

}  // namespace looptrees
