#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace looptrees {

struct InvalidEncoding : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HullConstraint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rooted ordered tree stored as the preorder child-count sequence.
// Valid sequences are exactly the Lukasiewicz-positive ones:
//   sum(degrees) == size - 1, and every strict prefix P has sum(P) >= |P|.
class PlaneTree {
 public:
  // Validates and takes ownership of the preorder child counts.
  static PlaneTree from_preorder_degrees(std::vector<std::uint32_t> degrees);

  // No validation; caller guarantees the encoding is already valid.
  static PlaneTree unchecked(std::vector<std::uint32_t> degrees) {
    return PlaneTree(std::move(degrees));
  }

  const std::vector<std::uint32_t>& degrees() const { return degrees_; }
  std::size_t size() const { return degrees_.size(); }

  // Depth of every vertex, preorder-indexed.
  std::vector<std::uint32_t> depths() const;

  std::uint32_t height() const;

  // Children of every vertex as preorder indices.
  std::vector<std::vector<std::uint32_t>> children() const;

  // "<size> k_1 k_2 ... k_size"; bit-exact round trip with parse_line.
  std::string to_line() const;
  static PlaneTree parse_line(const std::string& line);

  bool operator==(const PlaneTree& o) const { return degrees_ == o.degrees_; }

 private:
  explicit PlaneTree(std::vector<std::uint32_t> degrees)
      : degrees_(std::move(degrees)) {}

  std::vector<std::uint32_t> degrees_;
};

// Parity coloring of a plane tree: even depth = white, odd depth = black.
struct TwoTypeTree {
  PlaneTree tree;
  std::vector<std::uint32_t> depths;  // preorder-indexed
  std::size_t white_count = 0;
  std::size_t black_count = 0;
  // Sum of deg(u) = k_u + 1 over black vertices (root is white, so every
  // black vertex has a parent edge).
  std::uint64_t black_degree_sum = 0;

  bool is_white(std::size_t v) const { return (depths[v] & 1u) == 0; }
};

TwoTypeTree as_two_type(const PlaneTree& t);

// All plane trees with exactly n vertices (Catalan(n-1) of them), in
// lexicographic order of the degree sequence. Intended for small n.
std::vector<PlaneTree> enumerate_trees(std::size_t n);

}  // namespace looptrees
