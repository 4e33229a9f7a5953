#include "looptrees/planetree.hpp"

#include <charconv>
#include <cstdio>

namespace looptrees {

PlaneTree PlaneTree::from_preorder_degrees(std::vector<std::uint32_t> degrees) {
  if (degrees.empty()) throw InvalidEncoding("empty degree sequence");
  const std::size_t n = degrees.size();
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    sum += degrees[i];
    if (sum < i + 1)
      throw InvalidEncoding("Lukasiewicz positivity fails at prefix " +
                            std::to_string(i + 1));
  }
  sum += degrees[n - 1];
  if (sum != n - 1)
    throw InvalidEncoding("degree sum " + std::to_string(sum) +
                          " != size-1 = " + std::to_string(n - 1));
  return PlaneTree(std::move(degrees));
}

std::vector<std::uint32_t> PlaneTree::depths() const {
  const std::size_t n = degrees_.size();
  std::vector<std::uint32_t> depth(n, 0);
  // Stack of remaining-children counts along the current root path.
  std::vector<std::uint32_t> open;
  for (std::size_t v = 0; v < n; ++v) {
    depth[v] = static_cast<std::uint32_t>(open.size());
    if (degrees_[v] > 0) {
      open.push_back(degrees_[v]);
    } else {
      while (!open.empty() && --open.back() == 0) open.pop_back();
    }
  }
  return depth;
}

std::uint32_t PlaneTree::height() const {
  std::uint32_t h = 0;
  std::vector<std::uint32_t> open;
  for (std::size_t v = 0; v < degrees_.size(); ++v) {
    h = std::max<std::uint32_t>(h, static_cast<std::uint32_t>(open.size()));
    if (degrees_[v] > 0) {
      open.push_back(degrees_[v]);
    } else {
      while (!open.empty() && --open.back() == 0) open.pop_back();
    }
  }
  return h;
}

std::vector<std::vector<std::uint32_t>> PlaneTree::children() const {
  const std::size_t n = degrees_.size();
  std::vector<std::vector<std::uint32_t>> ch(n);
  std::vector<std::uint32_t> stack;  // ancestors with children still open
  std::vector<std::uint32_t> remaining;
  for (std::size_t v = 0; v < n; ++v) {
    if (v > 0) {
      std::uint32_t parent = stack.back();
      ch[parent].push_back(static_cast<std::uint32_t>(v));
      --remaining.back();  // parent pops once its last subtree closes
    }
    if (degrees_[v] > 0) {
      stack.push_back(static_cast<std::uint32_t>(v));
      remaining.push_back(degrees_[v]);
    } else {
      while (!remaining.empty() && remaining.back() == 0) {
        stack.pop_back();
        remaining.pop_back();
      }
    }
  }
  return ch;
}

std::string PlaneTree::to_line() const {
  std::string out = std::to_string(degrees_.size());
  for (auto d : degrees_) {
    out.push_back(' ');
    out += std::to_string(d);
  }
  return out;
}

PlaneTree PlaneTree::parse_line(const std::string& line) {
  std::vector<std::uint32_t> vals;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && *p == ' ') ++p;
    if (p >= end) break;
    std::uint32_t v = 0;
    auto res = std::from_chars(p, end, v);
    if (res.ec != std::errc()) throw InvalidEncoding("bad token in tree line");
    vals.push_back(v);
    p = res.ptr;
  }
  if (vals.empty()) throw InvalidEncoding("empty tree line");
  std::size_t n = vals[0];
  if (vals.size() != n + 1)
    throw InvalidEncoding("tree line length mismatch");
  vals.erase(vals.begin());
  return from_preorder_degrees(std::move(vals));
}

TwoTypeTree as_two_type(const PlaneTree& t) {
  TwoTypeTree out{t, t.depths(), 0, 0, 0};
  const auto& deg = t.degrees();
  for (std::size_t v = 0; v < deg.size(); ++v) {
    if ((out.depths[v] & 1u) == 0) {
      ++out.white_count;
    } else {
      ++out.black_count;
      out.black_degree_sum += deg[v] + 1;  // children + parent edge
    }
  }
  return out;
}

namespace {

void enumerate_rec(std::size_t n, std::vector<std::uint32_t>& prefix,
                   std::uint64_t sum, std::vector<PlaneTree>& out) {
  std::size_t placed = prefix.size();
  if (placed == n) {
    if (sum == n - 1) out.push_back(PlaneTree::unchecked(prefix));
    return;
  }
  // Lukasiewicz: after placing vertex `placed` with degree d we need
  // sum+d >= placed+1 for strict prefixes and sum+d <= n-1 overall.
  for (std::uint32_t d = 0; sum + d <= n - 1; ++d) {
    if (placed + 1 < n && sum + d < placed + 1) continue;
    prefix.push_back(d);
    enumerate_rec(n, prefix, sum + d, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<PlaneTree> enumerate_trees(std::size_t n) {
  std::vector<PlaneTree> out;
  if (n == 0) return out;
  std::vector<std::uint32_t> prefix;
  enumerate_rec(n, prefix, 0, out);
  return out;
}

}  // namespace looptrees
