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

// Canonical forms for small graphs (n <= 11): the lexicographically
// smallest adjacency bit string over vertex orders that respect an
// iso-invariant colour refinement, found by branch and bound.  Bits are
// taken in colex pair order, so placing vertex v fixes the next v bits.

#include <algorithm>
#include <array>
#include <cstdint>
#include <bit>
#include <map>
#include <set>
#include <vector>

#include "c4tail/errors.hpp"
#include "c4tail/graph.hpp"

namespace c4tail {

inline constexpr int kCanonicalMaxN = 11;

namespace detail {

// Ordered colour classes from 1-WL refinement seeded by degree.
inline std::vector<int> refine_colours(int n, const std::array<std::uint16_t, 16>& adj) {
  std::vector<int> col(n);
  for (int v = 0; v < n; ++v) col[v] = std::popcount(static_cast<unsigned>(adj[v]));
  for (;;) {
    std::vector<std::pair<std::vector<int>, int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> s{col[v]};
      std::vector<int> nb;
      for (int w = 0; w < n; ++w)
        if (adj[v] >> w & 1) nb.push_back(col[w]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      sig[v] = {std::move(s), v};
    }
    std::map<std::vector<int>, int> rank;
    for (const auto& [s, v] : sig) rank.emplace(s, 0);
    int r = 0;
    for (auto& [s, id] : rank) id = r++;
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v) next[v] = rank[sig[v].first];
    const int before = static_cast<int>(std::set<int>(col.begin(), col.end()).size());
    col = next;
    if (r == before) return col;
  }
}

struct CanonSearch {
  int n = 0;
  std::array<std::uint16_t, 16> adj{};
  std::vector<int> slot_colour;  // colour required at each position
  std::vector<int> colour;
  std::vector<int> perm;
  std::vector<char> used;
  std::vector<std::uint8_t> cur, best;  // bits in colex order
  bool have_best = false;

  // -1, 0, +1 comparing cur and best on the first len bits.
  int compare_prefix(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i)
      if (cur[i] != best[i]) return cur[i] < best[i] ? -1 : 1;
    return 0;
  }

  void run(int pos) {
    if (pos == n) {
      if (!have_best || compare_prefix(cur.size()) < 0) {
        best = cur;
        have_best = true;
      }
      return;
    }
    const std::size_t base = static_cast<std::size_t>(pos) * (pos - 1) / 2;
    for (int v = 0; v < n; ++v) {
      if (used[v] || colour[v] != slot_colour[pos]) continue;
      for (int u = 0; u < pos; ++u) cur[base + u] = adj[perm[u]] >> v & 1;
      if (have_best && compare_prefix(base + pos) > 0) continue;
      used[v] = 1;
      perm[pos] = v;
      run(pos + 1);
      used[v] = 0;
    }
  }
};

}  // namespace detail

// Canonical edge mask (bit i set <=> colex pair i present after relabelling).
// Together with n it identifies the isomorphism class.
inline std::uint64_t canonical_code(const SimpleGraph& g) {
  const int n = g.n();
  if (n > kCanonicalMaxN) throw BudgetError("canonical_code: n exceeds 11");
  detail::CanonSearch s;
  s.n = n;
  for (const Edge& e : g.edges()) {
    s.adj[e.u] |= static_cast<std::uint16_t>(1u << e.v);
    s.adj[e.v] |= static_cast<std::uint16_t>(1u << e.u);
  }
  s.colour = detail::refine_colours(n, s.adj);
  s.slot_colour = s.colour;
  std::sort(s.slot_colour.begin(), s.slot_colour.end());
  s.perm.assign(n, -1);
  s.used.assign(n, 0);
  s.cur.assign(num_pairs(n), 0);
  s.run(0);
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < s.best.size(); ++i) code |= std::uint64_t{s.best[i]} << i;
  return code;
}

inline SimpleGraph canonical_form(const SimpleGraph& g) {
  return SimpleGraph::from_mask(g.n(), canonical_code(g));
}

inline bool is_isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
  return a.n() == b.n() && a.num_edges() == b.num_edges() && canonical_code(a) == canonical_code(b);
}

}  // namespace c4tail
