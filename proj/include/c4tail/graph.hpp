// Copyright 2026 The c4tail Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "c4tail/errors.hpp"

namespace c4tail {

// Unordered vertex pair, always stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

  auto operator<=>(const Edge&) const = default;
};

inline std::size_t num_pairs(int n) {
  return n < 2 ? 0 : static_cast<std::size_t>(n) * (n - 1) / 2;
}

// Colexicographic index of the pair {u, v} among all pairs of [n]:
// (0,1)->0, (0,2)->1, (1,2)->2, (0,3)->3, ...  Independent of n, so a
// graph on [n] embeds in K_{n'} without reindexing.
inline std::size_t pair_index(int u, int v) {
  if (u > v) std::swap(u, v);
  return static_cast<std::size_t>(v) * (v - 1) / 2 + u;
}

inline Edge pair_at(std::size_t index) {
  int v = 1;
  while (static_cast<std::size_t>(v) * (v + 1) / 2 <= index) ++v;
  return {static_cast<int>(index - static_cast<std::size_t>(v) * (v - 1) / 2), v};
}

// Simple undirected graph on the vertex set {0, ..., n-1}.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(int n) : n_(n), adj_(checked_size(n) * checked_size(n), 0) {}

  SimpleGraph(int n, std::span<const Edge> edges) : SimpleGraph(n) {
    for (const Edge& e : edges) add_edge(e.u, e.v);
  }
  SimpleGraph(int n, std::initializer_list<Edge> edges)
      : SimpleGraph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  int n() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  // Sorted lexicographically by (u, v).
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    return adj_[index(u, v)] != 0;
  }
  bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }

  // Adds {u, v}; rejects loops and out-of-range endpoints, ignores duplicates.
  void add_edge(int u, int v) {
    detail::require(u != v, "SimpleGraph: loops are not allowed");
    detail::require(u >= 0 && v >= 0 && u < n_ && v < n_,
                    "SimpleGraph: edge endpoint out of range");
    if (has_edge(u, v)) return;
    adj_[index(u, v)] = adj_[index(v, u)] = 1;
    Edge e(u, v);
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
  }

  void remove_edge(int u, int v) {
    if (!has_edge(u, v)) return;
    adj_[index(u, v)] = adj_[index(v, u)] = 0;
    Edge e(u, v);
    edges_.erase(std::lower_bound(edges_.begin(), edges_.end(), e));
  }

  SimpleGraph without_edge(const Edge& e) const {
    SimpleGraph g = *this;
    g.remove_edge(e.u, e.v);
    return g;
  }

  int degree(int v) const {
    int d = 0;
    for (int w = 0; w < n_; ++w) d += adj_[index(v, w)];
    return d;
  }

  std::vector<int> degrees() const {
    std::vector<int> d(n_, 0);
    for (const Edge& e : edges_) {
      ++d[e.u];
      ++d[e.v];
    }
    return d;
  }

  int min_degree() const {
    if (n_ == 0) return 0;
    auto d = degrees();
    return *std::min_element(d.begin(), d.end());
  }

  // Bit i set iff the pair with colex index i is an edge.  Requires n <= 11.
  std::uint64_t edge_mask() const {
    detail::require(num_pairs(n_) <= 64, "edge_mask: graph too large");
    std::uint64_t m = 0;
    for (const Edge& e : edges_) m |= std::uint64_t{1} << pair_index(e.u, e.v);
    return m;
  }

  static SimpleGraph from_mask(int n, std::uint64_t mask) {
    SimpleGraph g(n);
    for (std::size_t i = 0; i < num_pairs(n); ++i)
      if (mask >> i & 1) {
        Edge e = pair_at(i);
        g.add_edge(e.u, e.v);
      }
    return g;
  }

  // Same edges on a larger vertex set.
  SimpleGraph embedded(int n) const {
    detail::require(n >= n_, "embedded: target vertex count is smaller");
    return SimpleGraph(n, edges_);
  }

  bool operator==(const SimpleGraph& o) const {
    return n_ == o.n_ && edges_ == o.edges_;
  }

 private:
  static std::size_t checked_size(int n) {
    detail::require(n >= 0, "SimpleGraph: negative vertex count");
    return static_cast<std::size_t>(n);
  }
  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(u) * n_ + v;
  }

  int n_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<Edge> edges_;
};

// Named graphs used throughout the tests and fixtures.
inline SimpleGraph cycle_graph(int n) {
  SimpleGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline SimpleGraph complete_graph(int n) {
  SimpleGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

// K_{s,t} with sides {0..s-1} and {s..s+t-1}, padded with isolated vertices
// up to n (n = 0 means s + t).
inline SimpleGraph complete_bipartite(int s, int t, int n = 0) {
  SimpleGraph g(std::max(n, s + t));
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < t; ++b) g.add_edge(a, s + b);
  return g;
}

// Edge-list text: "n m" then m lines "u v", 0-based, edges in sorted order.
inline void write_edge_list(std::ostream& os, const SimpleGraph& g) {
  os << g.n() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

inline std::string to_edge_list(const SimpleGraph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

inline SimpleGraph read_edge_list(std::istream& is) {
  long long n = 0, m = 0;
  if (!(is >> n >> m) || n < 0 || m < 0)
    throw DomainError("edge list: malformed header");
  SimpleGraph g(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(is >> u >> v)) throw DomainError("edge list: truncated edge list");
    if (u == v || u < 0 || v < 0 || u >= n || v >= n)
      throw DomainError("edge list: invalid edge");
    if (g.has_edge(static_cast<int>(u), static_cast<int>(v)))
      throw DomainError("edge list: duplicate edge");
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  return g;
}

inline SimpleGraph from_edge_list(const std::string& text) {
  std::istringstream is(text);
  return read_edge_list(is);
}

}  // namespace c4tail
