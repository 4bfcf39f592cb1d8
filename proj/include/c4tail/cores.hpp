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

// Seeds, structured seeds and cores: small planted graphs that certify the
// upper-tail event, plus the edge-deletion core extraction.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "c4tail/errors.hpp"
#include "c4tail/extremal.hpp"
#include "c4tail/graph.hpp"
#include "c4tail/kernel.hpp"
#include "c4tail/rates.hpp"

namespace c4tail {

struct CoreParams {
  double eps = 0, delta = 0, K = 0;
  int n = 0;
  double p = 0;
  double phi_hat = 0;  // stands in for Phi_X(delta + eps)

  void validate() const {
    if (!(eps > 0 && eps < delta)) throw DomainError("CoreParams: need 0 < eps < delta");
    if (!(p > 0 && p < 1)) throw DomainError("CoreParams: p must lie in (0,1)");
    if (!(phi_hat > 0)) throw DomainError("CoreParams: phi_hat must be positive");
    if (!(K > 0)) throw DomainError("CoreParams: K must be positive");
    if (n < 4) throw DomainError("CoreParams: n must be >= 4");
  }
};

// phi_hat from the upper bracket of Phi_X(delta + eps) unless given.
inline CoreParams make_core_params(int n, double p, double delta, double eps, double K,
                                   std::optional<double> phi_hat = std::nullopt) {
  CoreParams c{eps, delta, K, n, p, 0.0};
  c.phi_hat = phi_hat ? *phi_hat : phi_bounds(n, p, delta + eps, eps).upper;
  c.validate();
  return c;
}

// N(G) = induced C4 + p^2 * induced (K_{1,2} + K_1).
inline double n_score(const SimpleGraph& g, double p) {
  if (g.n() < 4) return 0.0;
  return static_cast<double>(count_induced(g, Pattern::C4)) +
         static_cast<double>(count_induced(g, Pattern::K12_K1)) * p * p;
}

inline double edge_score(const SimpleGraph& g, const Edge& e, double p) {
  if (!g.has_edge(e)) throw DomainError("edge_score: e is not an edge of G");
  if (g.n() < 4) return 0.0;
  return static_cast<double>(count_induced_at_edge(g, e, Pattern::C4)) +
         static_cast<double>(count_induced_at_edge(g, e, Pattern::K12_K1)) * p * p;
}

inline bool within_size(const SimpleGraph& g, const CoreParams& c) {
  return static_cast<double>(g.num_edges()) <= c.K * c.phi_hat;
}

inline bool is_seed(const SimpleGraph& g, const CoreParams& c) {
  c.validate();
  return within_size(g, c) &&
         conditioned_expectation_c4(g, c.n, c.p) >= (1 + c.delta - c.eps) * expected_induced_c4(c.n, c.p);
}

inline bool is_structured_seed(const SimpleGraph& g, const CoreParams& c) {
  c.validate();
  return within_size(g, c) && n_score(g, c.p) >= (c.delta - c.eps) * expected_induced_c4(c.n, c.p);
}

inline double core_edge_threshold(const CoreParams& c) {
  return c.eps * expected_induced_c4(c.n, c.p) / (2 * c.K * c.phi_hat);
}

inline bool is_core(const SimpleGraph& g, const CoreParams& c) {
  if (!is_structured_seed(g, c)) return false;
  const double thr = core_edge_threshold(c);
  for (const Edge& e : g.edges())
    if (edge_score(g, e, c.p) < thr) return false;
  return true;
}

// Score lost by deleting e (negative when the deletion creates copies).
inline double deletion_drop(const SimpleGraph& g, const Edge& e, double p) {
  return n_score(g, p) - n_score(g.without_edge(e), p);
}

// Deletes the smallest edge whose drop is below s / e(G_0) until none is.
inline SimpleGraph extract_core(const SimpleGraph& g0, double s, double p) {
  if (!(s >= 0)) throw DomainError("extract_core: s must be nonnegative");
  SimpleGraph g = g0;
  if (g0.num_edges() == 0) return g;
  const double thr = s / static_cast<double>(g0.num_edges());
  for (;;) {
    const double base = n_score(g, p);
    std::optional<Edge> victim;
    for (const Edge& e : g.edges())
      if (base - n_score(g.without_edge(e), p) < thr) {
        victim = e;
        break;
      }
    if (!victim) return g;
    g.remove_edge(victim->u, victim->v);
  }
}

struct CoreReport {
  int n = 0, m = 0;
  std::uint64_t count = 0;
  int v_max = 0;
  double vm_bound = 0;  // m/2 + m^{3/4}
  bool vm_bound_holds = true;
  std::vector<SimpleGraph> examples;
};

inline constexpr int kCoreMaxN = 8;
inline constexpr int kCoreMaxM = 12;
inline constexpr std::size_t kCoreExamples = 8;

inline int non_isolated(const SimpleGraph& g) {
  int c = 0;
  for (int d : g.degrees()) c += d != 0;
  return c;
}

// Isomorphism classes of n-vertex m-edge cores; lists at most kCoreExamples.
inline CoreReport enumerate_cores(int n, int m, const CoreParams& c) {
  if (n > kCoreMaxN || m > kCoreMaxM) throw BudgetError("enumerate_cores: needs n <= 8 and m <= 12");
  c.validate();
  CoreReport r;
  r.n = n;
  r.m = m;
  r.vm_bound = m / 2.0 + std::pow(m, 0.75);
  for (const SimpleGraph& g : enumerate_graphs(n, m, 0)) {
    if (!is_core(g, c)) continue;
    ++r.count;
    r.v_max = std::max(r.v_max, non_isolated(g));
    if (r.examples.size() < kCoreExamples) r.examples.push_back(g);
  }
  r.vm_bound_holds = r.v_max <= r.vm_bound;
  return r;
}

}  // namespace c4tail
