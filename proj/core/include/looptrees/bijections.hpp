#pragma once

#include <cstdint>
#include <vector>

#include "looptrees/loopgraph.hpp"
#include "looptrees/planetree.hpp"

namespace looptrees {

// Bijection between two-type trees and plane trees. White vertices become
// leaves of the image; a black vertex with k children becomes a vertex with
// k+1 children. For every white vertex u with parent u0 and children
// u1..uk (left to right) the image has edges u0-u1, u1-u2, ..., u_{k-1}-u_k
// and u_k-u (just u0-u for a white leaf); the image is re-rooted at the
// first child of the original root.
PlaneTree js_forward(const TwoTypeTree& t);

// Same map, also reporting where each vertex of t lands:
// vertex_to_image[v] is the image preorder index of t's preorder vertex v.
struct MappedImage {
  PlaneTree image;
  std::vector<std::uint32_t> vertex_to_image;
};
MappedImage js_forward_mapped(const TwoTypeTree& t);

// Exact inverse: js_forward(js_inverse(s)) == s for every plane tree s.
TwoTypeTree js_inverse(const PlaneTree& s);

// Looptree of s: each vertex with children c1..ck contributes the cycle
// v-c1-...-ck-v (a double edge when k = 1). Vertices keep their preorder
// indices in s.
LoopGraph loop_of(const PlaneTree& s);

// Quotient of loop_of(s) contracting, for every internal vertex, the edge
// to its last child. Vertices are the leaves of s, numbered by preorder
// rank among leaves; each internal vertex with k children contributes a
// cycle of length k. If class_of is non-null it receives, for every
// preorder vertex of s, the quotient vertex it maps to.
LoopGraph loop_bar_of(const PlaneTree& s,
                      std::vector<std::uint32_t>* class_of = nullptr);

// Multigraph on the white vertices of t (numbered by preorder rank among
// whites): each black vertex with parent w0 and children w1..wk contributes
// the cycle w0-w1-...-wk-w0; black leaves contribute self-loops.
// Throws HullConstraint when |t| < 2.
LoopGraph boundary_from_components(const TwoTypeTree& t);

}  // namespace looptrees
