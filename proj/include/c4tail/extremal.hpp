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

// Exhaustive extremal oracles for induced C4 counts and the closed-form
// bounds they are compared against.

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <utility>
#include <vector>

#include "c4tail/canonical.hpp"
#include "c4tail/errors.hpp"
#include "c4tail/graph.hpp"
#include "c4tail/kernel.hpp"

namespace c4tail {

inline constexpr int kEnumerateMaxN = 9;

namespace detail {

// Canonical codes of all n-vertex m-edge graphs, grown one edge at a time.
class ClassCache {
 public:
  const std::vector<std::uint64_t>& get(int n, int m) {
    std::lock_guard<std::mutex> lock(mu_);
    return get_locked(n, m);
  }

 private:
  const std::vector<std::uint64_t>& get_locked(int n, int m) {
    const auto key = std::make_pair(n, m);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::set<std::uint64_t> out;
    if (m == 0) {
      out.insert(0);
    } else {
      const auto& prev = get_locked(n, m - 1);
      const std::size_t N = num_pairs(n);
      for (std::uint64_t code : prev)
        for (std::size_t i = 0; i < N; ++i) {
          if (code >> i & 1) continue;
          out.insert(canonical_code(SimpleGraph::from_mask(n, code | std::uint64_t{1} << i)));
        }
    }
    return cache_[key] = std::vector<std::uint64_t>(out.begin(), out.end());
  }

  std::mutex mu_;
  std::map<std::pair<int, int>, std::vector<std::uint64_t>> cache_;
};

inline ClassCache& class_cache() {
  static ClassCache c;
  return c;
}

}  // namespace detail

// One representative (in canonical labelling) per isomorphism class of
// n-vertex m-edge graphs with minimum degree >= min_degree, in canonical
// code order.
inline std::vector<SimpleGraph> enumerate_graphs(int n, int m, int min_degree) {
  if (n > kEnumerateMaxN) throw BudgetError("enumerate_graphs: n exceeds 9");
  detail::require(n >= 0 && m >= 0, "enumerate_graphs: negative size");
  std::vector<SimpleGraph> out;
  if (static_cast<std::size_t>(m) > num_pairs(n)) return out;
  if (n > 0 && 2LL * m < static_cast<long long>(min_degree) * n) return out;
  for (std::uint64_t code : detail::class_cache().get(n, m)) {
    SimpleGraph g = SimpleGraph::from_mask(n, code);
    if (n == 0 || g.min_degree() >= min_degree) out.push_back(std::move(g));
  }
  return out;
}

struct ExtremalRecord {
  int n = 0, m = 0;
  std::uint64_t max_count = 0;
  SimpleGraph witness;
};

// Maximum induced C4 count over the class; the witness is the first maximiser
// in canonical order.
inline ExtremalRecord max_induced_c4(int n, int m, int min_degree) {
  const auto graphs = enumerate_graphs(n, m, min_degree);
  if (graphs.empty()) throw DomainError("max_induced_c4: no graph with these parameters");
  ExtremalRecord r{n, m, 0, graphs.front()};
  bool first = true;
  for (const SimpleGraph& g : graphs) {
    const std::uint64_t c = count_induced(g, Pattern::C4);
    if (first || c > r.max_count) {
      r.max_count = c;
      r.witness = g;
      first = false;
    }
  }
  return r;
}

// m(m - n + 1)/4, valid for minimum degree >= 2.
inline double bound_inducibility(double n, double m) {
  if (!(m > 3)) throw DomainError("bound_inducibility: needs m > 3");
  return m * (m - n + 1.0) / 4.0;
}

// m n^2 / 8 for induced K_{1,2} + K_1.
inline double bound_k12k1(double n, double m) {
  if (m > n * (n - 1) / 2) throw DomainError("bound_k12k1: m exceeds C(n,2)");
  return m * n * n / 8.0;
}

// Right-hand side of the degree-class bound on induced C4:
//   sum_{i=2}^R (x_i/i) C(i,2) (sum_{j>i} x_j/j + x_i/(2i))
//   + sum_{i=2}^R x_i e(G)(i-1)/R + x_{>R}^2/4.
// The m2_proxy and eps arguments are accepted for interface symmetry and not
// used: the middle sum is evaluated with e(G)/R directly.
inline double degree_class_c4_bound(const SimpleGraph& g, int R, [[maybe_unused]] double m2_proxy = 0.0,
                                    [[maybe_unused]] double eps = 0.0) {
  const DegreeClassProfile prof = degree_class_profile(g, R);
  if (!prof.independent)
    throw PreconditionError("degree_class_c4_bound: an edge joins two vertices of degree <= R");
  const MassVector& x = prof.x;
  const double e = static_cast<double>(g.num_edges());
  double s = 0.0, tail = 0.0;  // tail = sum_{j>i, j<=R} x_j/j
  for (int i = R; i >= 2; --i) {
    s += x[i] / i * (i * (i - 1) / 2.0) * (tail + x[i] / (2.0 * i));
    s += x[i] * e * (i - 1) / R;
    tail += x[i] / i;
  }
  return s + x.over_R() * x.over_R() / 4.0;
}

}  // namespace c4tail
