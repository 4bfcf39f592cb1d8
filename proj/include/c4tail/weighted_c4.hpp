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

// The multilinear polynomial E[X] for independent edges with individual
// probabilities w_e (edges indexed by pair_index), and its gradient.
//
//   E(w) = sum over 4-sets {a,b,c,d} and the three cycle pairings of
//          prod_{cycle edges} w_e * prod_{diagonals} (1 - w_e).

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "c4tail/errors.hpp"
#include "c4tail/graph.hpp"

namespace c4tail {

namespace detail {

// Cycle orders x-y-z-w of a 4-set; diagonals are (x,z) and (y,w).
template <class Fn>
inline void for_each_four_cycle(int n, Fn&& fn) {
  for (int d = 3; d < n; ++d)
    for (int c = 2; c < d; ++c)
      for (int b = 1; b < c; ++b)
        for (int a = 0; a < b; ++a) {
          const std::size_t ab = pair_index(a, b), ac = pair_index(a, c), ad = pair_index(a, d),
                            bc = pair_index(b, c), bd = pair_index(b, d), cd = pair_index(c, d);
          // a-b-c-d (diag ac, bd), a-b-d-c (diag ad, bc), a-c-b-d (diag ab, cd)
          fn(std::array<std::size_t, 6>{ab, bc, cd, ad, ac, bd});
          fn(std::array<std::size_t, 6>{ab, bd, cd, ac, ad, bc});
          fn(std::array<std::size_t, 6>{ac, bc, bd, ad, ab, cd});
        }
}

}  // namespace detail

inline double weighted_c4_expectation(int n, std::span<const double> w) {
  detail::require(w.size() == num_pairs(n), "weighted_c4_expectation: wrong weight vector length");
  double s = 0.0;
  detail::for_each_four_cycle(n, [&](const std::array<std::size_t, 6>& e) {
    s += w[e[0]] * w[e[1]] * w[e[2]] * w[e[3]] * (1.0 - w[e[4]]) * (1.0 - w[e[5]]);
  });
  return s;
}

// Exact partial derivatives; every monomial is of degree <= 1 in each weight.
inline std::vector<double> weighted_c4_gradient(int n, std::span<const double> w,
                                                double* value = nullptr) {
  detail::require(w.size() == num_pairs(n), "weighted_c4_gradient: wrong weight vector length");
  std::vector<double> g(w.size(), 0.0);
  double s = 0.0;
  detail::for_each_four_cycle(n, [&](const std::array<std::size_t, 6>& e) {
    const double c0 = w[e[0]], c1 = w[e[1]], c2 = w[e[2]], c3 = w[e[3]];
    const double d0 = 1.0 - w[e[4]], d1 = 1.0 - w[e[5]];
    const double c01 = c0 * c1, c23 = c2 * c3, dd = d0 * d1;
    const double cyc = c01 * c23;
    g[e[0]] += c1 * c23 * dd;
    g[e[1]] += c0 * c23 * dd;
    g[e[2]] += c01 * c3 * dd;
    g[e[3]] += c01 * c2 * dd;
    g[e[4]] -= cyc * d1;
    g[e[5]] -= cyc * d0;
    s += cyc * dd;
  });
  if (value) *value = s;
  return g;
}

}  // namespace c4tail
