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

// Subcubes of the edge hypercube {0,1}^N, N = C(n,2): a subcube fixes some
// coordinates to bits and leaves the rest free.  Fixing an edge to 1 plants
// it, fixing it to 0 forbids it.

#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "c4tail/errors.hpp"
#include "c4tail/graph.hpp"
#include "c4tail/kernel.hpp"
#include "c4tail/weighted_c4.hpp"

namespace c4tail {

class Subcube {
 public:
  Subcube() = default;
  explicit Subcube(std::size_t N) : N_(N) {}

  // The one-supcube of a planted graph on the ambient vertex set [n].
  static Subcube planted(const SimpleGraph& g, int n) {
    detail::require(g.n() <= n, "Subcube::planted: graph larger than ambient vertex set");
    Subcube F(num_pairs(n));
    for (const Edge& e : g.edges()) F.fix(pair_index(e.u, e.v), true);
    return F;
  }

  std::size_t N() const { return N_; }
  const std::map<std::size_t, bool>& fixed() const { return fixed_; }

  void fix(std::size_t index, bool bit) {
    detail::require(index < N_, "Subcube::fix: index outside the ambient dimension");
    fixed_[index] = bit;
  }

  bool operator==(const Subcube&) const = default;

 private:
  std::size_t N_ = 0;
  std::map<std::size_t, bool> fixed_;
};

struct Codims {
  std::size_t codim = 0, codim0 = 0, codim1 = 0;
  bool operator==(const Codims&) const = default;
};

inline Codims codims(const Subcube& F) {
  Codims c;
  for (const auto& [index, bit] : F.fixed()) ++(bit ? c.codim1 : c.codim0);
  c.codim = c.codim0 + c.codim1;
  return c;
}

// Empty optional when the fixings conflict.
inline std::optional<Subcube> intersect(const Subcube& a, const Subcube& b) {
  if (a.N() != b.N()) throw DomainError("intersect: ambient dimensions differ");
  Subcube out = a;
  for (const auto& [index, bit] : b.fixed()) {
    auto it = a.fixed().find(index);
    if (it != a.fixed().end() && it->second != bit) return std::nullopt;
    out.fix(index, bit);
  }
  return out;
}

struct Supcubes {
  Subcube one;
  Subcube zero;
};

inline Supcubes supcubes(const Subcube& F) {
  Supcubes s{Subcube(F.N()), Subcube(F.N())};
  for (const auto& [index, bit] : F.fixed()) (bit ? s.one : s.zero).fix(index, bit);
  return s;
}

// -log P(Y in F) under Ber(p)^N.
inline double neg_log_prob(const Subcube& F, double p) {
  const Codims c = codims(F);
  return static_cast<double>(c.codim1) * -std::log(p) +
         static_cast<double>(c.codim0) * -std::log1p(-p);
}

inline double subcube_expectation_c4(const Subcube& F, int n, double p) {
  if (F.N() != num_pairs(n)) throw DomainError("subcube_expectation_c4: F does not live on C(n,2) coordinates");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("subcube_expectation_c4: p outside [0,1]");
  std::vector<double> w(F.N(), p);
  for (const auto& [index, bit] : F.fixed()) w[index] = bit ? 1.0 : 0.0;
  return weighted_c4_expectation(n, w);
}

inline constexpr int kPhiMaxNGeneral = 6;
inline constexpr int kPhiMaxNOneSupcube = 7;

// Phi_X(delta): min of -log P(Y in F) over subcubes F with
// E_F[X] >= (1+delta) E[X], by exhaustive search with cost pruning.
// Returns +infinity when no subcube qualifies.
inline double phi_bruteforce(int n, double p, double delta, bool one_supcubes_only) {
  const int cap = one_supcubes_only ? kPhiMaxNOneSupcube : kPhiMaxNGeneral;
  if (n > cap) throw BudgetError("phi_bruteforce: n exceeds the enumeration budget");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("phi_bruteforce: p must lie in (0,1)");
  detail::require(n >= 0, "phi_bruteforce: negative n");
  const double target = (1.0 + delta) * expected_induced_c4(n, p);
  const double slack = 1e-12 * std::max(1.0, std::abs(target));
  const std::size_t N = num_pairs(n);
  const double cost1 = -std::log(p), cost0 = -std::log1p(-p);

  std::vector<double> w(N, p);
  double best = std::numeric_limits<double>::infinity();
  // Depth-first over coordinates; each coordinate is free, 1, or 0.
  auto dfs = [&](auto&& self, std::size_t i, double cost) -> void {
    if (cost >= best) return;
    if (i == N) {
      if (weighted_c4_expectation(n, w) >= target - slack) best = cost;
      return;
    }
    w[i] = p;
    self(self, i + 1, cost);
    w[i] = 1.0;
    self(self, i + 1, cost + cost1);
    if (!one_supcubes_only) {
      w[i] = 0.0;
      self(self, i + 1, cost + cost0);
    }
    w[i] = p;
  };
  dfs(dfs, 0, 0.0);
  return best;
}

// "N k" then k lines "index bit".
inline void write_subcube(std::ostream& os, const Subcube& F) {
  os << F.N() << ' ' << F.fixed().size() << '\n';
  for (const auto& [index, bit] : F.fixed()) os << index << ' ' << (bit ? 1 : 0) << '\n';
}

inline Subcube read_subcube(std::istream& is) {
  long long N = 0, k = 0;
  if (!(is >> N >> k) || N < 0 || k < 0) throw DomainError("subcube: malformed header");
  Subcube F(static_cast<std::size_t>(N));
  for (long long i = 0; i < k; ++i) {
    long long index = 0;
    int bit = 0;
    if (!(is >> index >> bit) || index < 0 || index >= N || (bit != 0 && bit != 1))
      throw DomainError("subcube: malformed fixing");
    if (F.fixed().count(static_cast<std::size_t>(index))) throw DomainError("subcube: duplicate index");
    F.fix(static_cast<std::size_t>(index), bit == 1);
  }
  return F;
}

}  // namespace c4tail
