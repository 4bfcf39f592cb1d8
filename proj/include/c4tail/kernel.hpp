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

// Exact induced-pattern counting on small graphs, expectations of the
// induced 4-cycle count X in G(n,p), and an exhaustive tail oracle.
//
// Counting convention: an induced copy is a vertex subset whose induced
// subgraph is isomorphic to the pattern.  For C4 a 4-set induces at most one
// cycle, so X equals the number of (4-set, cycle pairing) pairs that are
// present with both diagonals absent, and E[X] = 3 C(n,4) p^4 (1-p)^2.

#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "c4tail/errors.hpp"
#include "c4tail/graph.hpp"
#include "c4tail/mass_vector.hpp"

namespace c4tail {

enum class Pattern { C4, P4, M2, K12_K1, K2_2K1, K12, K2 };

inline constexpr std::array<Pattern, 7> kAllPatterns = {
    Pattern::C4, Pattern::P4, Pattern::M2, Pattern::K12_K1,
    Pattern::K2_2K1, Pattern::K12, Pattern::K2};

inline constexpr int vertex_count(Pattern pat) {
  switch (pat) {
    case Pattern::K12:
      return 3;
    case Pattern::K2:
      return 2;
    default:
      return 4;
  }
}

inline constexpr std::string_view pattern_name(Pattern pat) {
  switch (pat) {
    case Pattern::C4: return "C4";
    case Pattern::P4: return "P4";
    case Pattern::M2: return "M2";
    case Pattern::K12_K1: return "K12_K1";
    case Pattern::K2_2K1: return "K2_2K1";
    case Pattern::K12: return "K12";
    case Pattern::K2: return "K2";
  }
  return "?";
}

inline double binomial(double n, int k) {
  if (k < 0 || n < k) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

inline double log_binomial(double n, double k) {
  if (k < 0 || k > n) return -INFINITY;
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

namespace detail {

// Isomorphism type of a graph on 4 labelled vertices; "Other" lumps every
// type with a triangle or a vertex of degree 3.
enum class FourType : std::uint8_t { Empty, K2_2K1, M2, K12_K1, P4, C4, Other };

// Local pair order for a 4-set {a0<a1<a2<a3}, colex like pair_index:
// bit0 (0,1), bit1 (0,2), bit2 (1,2), bit3 (0,3), bit4 (1,3), bit5 (2,3).
inline constexpr std::array<std::array<int, 2>, 6> kLocalPairs = {
    {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}}};

// The three perfect matchings of K4 as local masks.  Choosing matching j as
// the diagonals leaves the 4-cycle made of the other two.
inline constexpr std::array<std::uint8_t, 3> kMatchings = {
    0b100001,  // {01, 23}
    0b010010,  // {02, 13}
    0b001100,  // {03, 12}
};

inline constexpr std::uint8_t cycle_mask(int diag) {
  return static_cast<std::uint8_t>(0b111111 & ~kMatchings[diag]);
}

inline constexpr FourType classify_four(unsigned mask) {
  int deg[4] = {0, 0, 0, 0};
  int e = 0;
  for (int b = 0; b < 6; ++b)
    if (mask >> b & 1) {
      ++deg[kLocalPairs[b][0]];
      ++deg[kLocalPairs[b][1]];
      ++e;
    }
  int maxd = 0, zeros = 0;
  for (int d : deg) {
    maxd = d > maxd ? d : maxd;
    zeros += d == 0;
  }
  switch (e) {
    case 0: return FourType::Empty;
    case 1: return FourType::K2_2K1;
    case 2: return maxd == 2 ? FourType::K12_K1 : FourType::M2;
    case 3: return (maxd == 2 && zeros == 0) ? FourType::P4 : FourType::Other;
    case 4: return maxd == 2 ? FourType::C4 : FourType::Other;
    default: return FourType::Other;
  }
}

inline constexpr std::array<FourType, 64> make_four_table() {
  std::array<FourType, 64> t{};
  for (unsigned m = 0; m < 64; ++m) t[m] = classify_four(m);
  return t;
}

inline constexpr std::array<FourType, 64> kFourTable = make_four_table();

inline unsigned local_mask(const SimpleGraph& g, const std::array<int, 4>& s) {
  unsigned m = 0;
  for (int b = 0; b < 6; ++b)
    if (g.has_edge(s[kLocalPairs[b][0]], s[kLocalPairs[b][1]])) m |= 1u << b;
  return m;
}

inline FourType four_type_of(Pattern pat) {
  switch (pat) {
    case Pattern::C4: return FourType::C4;
    case Pattern::P4: return FourType::P4;
    case Pattern::M2: return FourType::M2;
    case Pattern::K12_K1: return FourType::K12_K1;
    case Pattern::K2_2K1: return FourType::K2_2K1;
    default: return FourType::Other;
  }
}

inline void check_pattern_fits(const SimpleGraph& g, Pattern pat) {
  if (vertex_count(pat) > g.n())
    throw DomainError("count_induced: pattern has more vertices than the graph");
}

}  // namespace detail

// Number of vertex subsets of G inducing a copy of pat.
inline std::uint64_t count_induced(const SimpleGraph& g, Pattern pat) {
  detail::check_pattern_fits(g, pat);
  const int n = g.n();
  if (pat == Pattern::K2) return g.num_edges();
  if (pat == Pattern::K12) {
    std::uint64_t c = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int d = b + 1; d < n; ++d)
          c += (g.has_edge(a, b) + g.has_edge(a, d) + g.has_edge(b, d)) == 2;
    return c;
  }
  const auto want = detail::four_type_of(pat);
  std::uint64_t c = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int d = b + 1; d < n; ++d)
        for (int e = d + 1; e < n; ++e)
          c += detail::kFourTable[detail::local_mask(g, {a, b, d, e})] == want;
  return c;
}

// Number of induced copies of pat in G that use the edge e.
inline std::uint64_t count_induced_at_edge(const SimpleGraph& g, const Edge& e,
                                           Pattern pat) {
  detail::check_pattern_fits(g, pat);
  if (!g.has_edge(e)) throw DomainError("count_induced_at_edge: e is not an edge of G");
  const int n = g.n();
  if (pat == Pattern::K2) return 1;
  if (pat == Pattern::K12) {
    std::uint64_t c = 0;
    for (int w = 0; w < n; ++w)
      if (w != e.u && w != e.v) c += (g.has_edge(e.u, w) + g.has_edge(e.v, w)) == 1;
    return c;
  }
  const auto want = detail::four_type_of(pat);
  std::uint64_t c = 0;
  for (int a = 0; a < n; ++a) {
    if (a == e.u || a == e.v) continue;
    for (int b = a + 1; b < n; ++b) {
      if (b == e.u || b == e.v) continue;
      std::array<int, 4> s = {e.u, e.v, a, b};
      std::sort(s.begin(), s.end());
      c += detail::kFourTable[detail::local_mask(g, s)] == want;
    }
  }
  return c;
}

inline double expected_induced_c4(double n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("expected_induced_c4: p outside [0,1]");
  detail::require(n >= 0, "expected_induced_c4: negative n");
  return 3.0 * binomial(n, 4) * std::pow(p, 4) * (1.0 - p) * (1.0 - p);
}

// Census of 4-subsets of [n] by induced type when G lives on its first
// g.n() vertices and the remaining n - g.n() vertices are isolated.
struct FourSetCensus {
  double empty = 0, k2_2k1 = 0, m2 = 0, k12_k1 = 0, p4 = 0, c4 = 0, other = 0;
};

inline FourSetCensus four_set_census(const SimpleGraph& g, int n) {
  detail::require(g.n() <= n, "four_set_census: graph larger than ambient vertex set");
  const int v = g.n();
  const double outside = n - v;
  FourSetCensus c;
  auto add = [&c](detail::FourType t, double w) {
    using detail::FourType;
    switch (t) {
      case FourType::Empty: c.empty += w; break;
      case FourType::K2_2K1: c.k2_2k1 += w; break;
      case FourType::M2: c.m2 += w; break;
      case FourType::K12_K1: c.k12_k1 += w; break;
      case FourType::P4: c.p4 += w; break;
      case FourType::C4: c.c4 += w; break;
      case FourType::Other: c.other += w; break;
    }
  };
  // i plant vertices plus (4 - i) isolated outside vertices.
  add(detail::FourType::Empty, binomial(outside, 4) + v * binomial(outside, 3));
  const double edges = static_cast<double>(g.num_edges());
  add(detail::FourType::K2_2K1, edges * binomial(outside, 2));
  add(detail::FourType::Empty, (binomial(v, 2) - edges) * binomial(outside, 2));
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b)
      for (int d = b + 1; d < v; ++d) {
        const int e = g.has_edge(a, b) + g.has_edge(a, d) + g.has_edge(b, d);
        const auto t = e == 0   ? detail::FourType::Empty
                       : e == 1 ? detail::FourType::K2_2K1
                       : e == 2 ? detail::FourType::K12_K1
                                : detail::FourType::Other;
        add(t, outside);
        for (int x = d + 1; x < v; ++x)
          add(detail::kFourTable[detail::local_mask(g, {a, b, d, x})], 1.0);
      }
  return c;
}

// E[X | plant ⊆ G(n,p)] for a plant labelled on vertices 0..plant.n()-1.
// Each induced type H of a 4-set contributes p^{4-e(H)} (1-p)^2 times the
// number of cycle pairings whose cycle contains H and whose diagonals avoid it.
inline double conditioned_expectation_c4(const SimpleGraph& plant, int n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("conditioned_expectation_c4: p outside [0,1]");
  if (plant.n() > n) throw DomainError("conditioned_expectation_c4: plant has more than n vertices");
  const FourSetCensus c = four_set_census(plant, n);
  const double q = 1.0 - p;
  return q * q *
         (3.0 * c.empty * p * p * p * p + 2.0 * c.k2_2k1 * p * p * p +
          2.0 * c.m2 * p * p + c.k12_k1 * p * p + c.p4 * p + c.c4);
}

// Precomputed 4-subset masks for graphs on n <= 11 vertices encoded as
// edge bitmasks (bit pair_index(u, v)).
class MaskCounter {
 public:
  explicit MaskCounter(int n) : n_(n) {
    detail::require(num_pairs(n) <= 64, "MaskCounter: n too large");
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int d = b + 1; d < n; ++d)
          for (int e = d + 1; e < n; ++e) {
            const std::array<int, 4> s = {a, b, d, e};
            std::array<std::uint64_t, 6> bit{};
            for (int k = 0; k < 6; ++k)
              bit[k] = std::uint64_t{1} << pair_index(s[detail::kLocalPairs[k][0]],
                                                      s[detail::kLocalPairs[k][1]]);
            Quad q;
            for (int k = 0; k < 6; ++k) q.all |= bit[k];
            for (int j = 0; j < 3; ++j)
              for (int k = 0; k < 6; ++k)
                if (detail::cycle_mask(j) >> k & 1) q.cycle[j] |= bit[k];
            quads_.push_back(q);
          }
  }

  int n() const { return n_; }

  int c4(std::uint64_t mask) const {
    int c = 0;
    for (const Quad& q : quads_) {
      const std::uint64_t m = mask & q.all;
      c += (m == q.cycle[0]) | (m == q.cycle[1]) | (m == q.cycle[2]);
    }
    return c;
  }

 private:
  struct Quad {
    std::uint64_t all = 0;
    std::array<std::uint64_t, 3> cycle{};
  };
  int n_;
  std::vector<Quad> quads_;
};

struct TailOracleResult {
  double threshold = 0;
  double probability = 0;
  std::uint64_t graphs_enumerated = 0;
};

inline constexpr int kTailOracleMaxN = 7;

// Partial oracle over graph indices [begin, end); the full oracle is the sum
// over any partition of [0, 2^C(n,2)).
inline TailOracleResult exact_tail_probability_range(int n, double p, double threshold,
                                                     std::uint64_t begin, std::uint64_t end) {
  if (n > kTailOracleMaxN) throw BudgetError("exact_tail_probability: n > 7 exceeds the 2^21 budget");
  detail::require(n >= 0, "exact_tail_probability: negative n");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("exact_tail_probability: p outside [0,1]");
  const std::size_t N = num_pairs(n);
  const std::uint64_t total = std::uint64_t{1} << N;
  end = std::min(end, total);
  std::vector<double> weight(N + 1);
  for (std::size_t e = 0; e <= N; ++e)
    weight[e] = std::pow(p, static_cast<double>(e)) * std::pow(1.0 - p, static_cast<double>(N - e));
  MaskCounter counter(n);
  TailOracleResult r{threshold, 0.0, 0};
  // Kahan summation: up to 2^21 terms of very different magnitude.
  double sum = 0.0, comp = 0.0;
  for (std::uint64_t g = begin; g < end; ++g) {
    ++r.graphs_enumerated;
    if (counter.c4(g) >= threshold) {
      const double y = weight[static_cast<std::size_t>(std::popcount(g))] - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }
  r.probability = std::min(1.0, std::max(0.0, sum));
  return r;
}

inline TailOracleResult exact_tail_probability(int n, double p, double threshold) {
  if (n > kTailOracleMaxN) throw BudgetError("exact_tail_probability: n > 7 exceeds the 2^21 budget");
  detail::require(n >= 0, "exact_tail_probability: negative n");
  return exact_tail_probability_range(n, p, threshold, 0, std::uint64_t{1} << num_pairs(n));
}

struct DegreeClassProfile {
  MassVector x;
  // True iff the vertices of positive degree <= R form an independent set.
  bool independent = true;
};

// Each edge goes to the class of its smaller endpoint degree when that is
// <= R, and to the "> R" bucket otherwise.
inline DegreeClassProfile degree_class_profile(const SimpleGraph& g, int R) {
  if (R < 2) throw DomainError("degree_class_profile: R must be at least 2");
  const auto deg = g.degrees();
  DegreeClassProfile out{MassVector(R), true};
  for (const Edge& e : g.edges()) {
    const int d = std::min(deg[e.u], deg[e.v]);
    out.x[d <= R ? d : R + 1] += 1.0;
    if (deg[e.u] <= R && deg[e.v] <= R) out.independent = false;
  }
  return out;
}

}  // namespace c4tail
