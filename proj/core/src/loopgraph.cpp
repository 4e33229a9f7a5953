#include "looptrees/loopgraph.hpp"

namespace looptrees {

std::vector<std::vector<std::uint32_t>> LoopGraph::adjacency() const {
  std::vector<std::vector<std::uint32_t>> adj(vertex_count);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

}  // namespace looptrees
