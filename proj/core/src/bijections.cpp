#include "looptrees/bijections.hpp"

#include <cstddef>
#include <limits>

namespace looptrees {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

}  // namespace

MappedImage js_forward_mapped(const TwoTypeTree& t) {
  const std::size_t n = t.tree.size();
  if (n == 1) return {PlaneTree::unchecked({0}), {0}};

  auto ch = t.tree.children();
  std::vector<std::uint32_t> parent(n, kNone), next_sib(n, kNone);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& kids = ch[v];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      parent[kids[i]] = static_cast<std::uint32_t>(v);
      next_sib[kids[i]] = i + 1 < kids.size() ? kids[i + 1] : kNone;
    }
  }

  // In the image, a black vertex b is followed by the entry points of its
  // white children (the first grandchild through each, or the child itself
  // when it is a leaf), and finally by its continuation: the next black
  // sibling, or the shared white parent when b is the last sibling.
  auto head = [&](std::uint32_t w) { return ch[w].empty() ? w : ch[w][0]; };

  std::vector<std::uint32_t> degs;
  degs.reserve(n);
  std::vector<std::uint32_t> vertex_to_image(n, 0);
  std::vector<std::uint32_t> stack{ch[0][0]};
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    vertex_to_image[v] = static_cast<std::uint32_t>(degs.size());
    if (t.is_white(v)) {
      degs.push_back(0);
      continue;
    }
    std::vector<std::uint32_t> out;
    out.reserve(ch[v].size() + 1);
    for (std::uint32_t c : ch[v]) out.push_back(head(c));
    out.push_back(next_sib[v] != kNone ? next_sib[v] : parent[v]);
    degs.push_back(static_cast<std::uint32_t>(out.size()));
    for (std::size_t i = out.size(); i-- > 0;) stack.push_back(out[i]);
  }
  return {PlaneTree::unchecked(std::move(degs)), std::move(vertex_to_image)};
}

PlaneTree js_forward(const TwoTypeTree& t) {
  return js_forward_mapped(t).image;
}

TwoTypeTree js_inverse(const PlaneTree& s) {
  const std::size_t n = s.size();
  if (n == 1) return as_two_type(s);

  auto ch = s.children();
  std::vector<std::vector<std::uint32_t>> tau_ch(n);

  // Internal vertices of s are black; leaves are white. The last child of
  // every internal vertex is its continuation, so following last children
  // from any chain entry point reaches the common white parent; the earlier
  // children are the entry points of the black vertex's own white children.
  auto process = [&](auto&& self, std::uint32_t entry) -> std::uint32_t {
    std::vector<std::uint32_t> chain;
    std::uint32_t x = entry, w;
    for (;;) {
      chain.push_back(x);
      std::uint32_t last = ch[x].back();
      if (ch[last].empty()) {
        w = last;
        break;
      }
      x = last;
    }
    for (std::uint32_t b : chain) {
      for (std::size_t i = 0; i + 1 < ch[b].size(); ++i) {
        std::uint32_t h = ch[b][i];
        tau_ch[b].push_back(ch[h].empty() ? h : self(self, h));
      }
    }
    tau_ch[w] = std::move(chain);
    return w;
  };
  std::uint32_t root = process(process, 0);

  std::vector<std::uint32_t> degs;
  degs.reserve(n);
  std::vector<std::uint32_t> stack{root};
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    degs.push_back(static_cast<std::uint32_t>(tau_ch[v].size()));
    for (std::size_t i = tau_ch[v].size(); i-- > 0;) stack.push_back(tau_ch[v][i]);
  }
  return as_two_type(PlaneTree::unchecked(std::move(degs)));
}

LoopGraph loop_of(const PlaneTree& s) {
  auto ch = s.children();
  LoopGraph g;
  g.vertex_count = s.size();
  for (std::size_t v = 0; v < ch.size(); ++v) {
    const auto& kids = ch[v];
    if (kids.empty()) continue;
    auto u = static_cast<std::uint32_t>(v);
    g.edges.emplace_back(u, kids.front());
    for (std::size_t i = 0; i + 1 < kids.size(); ++i)
      g.edges.emplace_back(kids[i], kids[i + 1]);
    g.edges.emplace_back(kids.back(), u);
    g.cycle_lengths.push_back(static_cast<std::uint32_t>(kids.size()) + 1);
  }
  return g;
}

LoopGraph loop_bar_of(const PlaneTree& s,
                      std::vector<std::uint32_t>* class_of) {
  const std::size_t n = s.size();
  auto ch = s.children();

  // Each contraction class is a maximal last-child chain; its unique leaf
  // (highest preorder index in the chain) is the representative. Quotient
  // vertices are numbered by preorder rank among leaves.
  std::vector<std::uint32_t> rep(n);
  for (std::size_t v = n; v-- > 0;)
    rep[v] = ch[v].empty() ? static_cast<std::uint32_t>(v) : rep[ch[v].back()];
  std::vector<std::uint32_t> leaf_rank(n, kNone);
  std::uint32_t leaves = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (ch[v].empty()) leaf_rank[v] = leaves++;
  auto cls = [&](std::uint32_t v) { return leaf_rank[rep[v]]; };

  LoopGraph g;
  g.vertex_count = leaves;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& kids = ch[v];
    if (kids.empty()) continue;
    // The closing edge of the cycle around v runs along the contracted
    // (v, last child) tree edge and disappears in the quotient.
    g.edges.emplace_back(cls(static_cast<std::uint32_t>(v)), cls(kids.front()));
    for (std::size_t i = 0; i + 1 < kids.size(); ++i)
      g.edges.emplace_back(cls(kids[i]), cls(kids[i + 1]));
    g.cycle_lengths.push_back(static_cast<std::uint32_t>(kids.size()));
  }
  if (class_of) {
    class_of->resize(n);
    for (std::size_t v = 0; v < n; ++v)
      (*class_of)[v] = cls(static_cast<std::uint32_t>(v));
  }
  return g;
}

LoopGraph boundary_from_components(const TwoTypeTree& t) {
  const std::size_t n = t.tree.size();
  if (n < 2) throw HullConstraint("boundary needs at least one black vertex");

  auto ch = t.tree.children();
  std::vector<std::uint32_t> white_rank(n, kNone);
  std::uint32_t whites = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (t.is_white(v)) white_rank[v] = whites++;

  LoopGraph g;
  g.vertex_count = whites;
  for (std::size_t w = 0; w < n; ++w) {
    if (!t.is_white(w)) continue;
    std::uint32_t w0 = white_rank[w];
    for (std::uint32_t b : ch[w]) {
      const auto& kids = ch[b];
      if (kids.empty()) {
        g.edges.emplace_back(w0, w0);
        g.cycle_lengths.push_back(1);
        continue;
      }
      g.edges.emplace_back(w0, white_rank[kids.front()]);
      for (std::size_t i = 0; i + 1 < kids.size(); ++i)
        g.edges.emplace_back(white_rank[kids[i]], white_rank[kids[i + 1]]);
      g.edges.emplace_back(white_rank[kids.back()], w0);
      g.cycle_lengths.push_back(static_cast<std::uint32_t>(kids.size()) + 1);
    }
  }
  return g;
}

}  // namespace looptrees
