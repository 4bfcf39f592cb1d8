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

// The naive mean-field problem: minimise sum_e I_p(q_e) over independent
// edge probabilities q subject to E_q[X] >= (1+delta) E[X].

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "c4tail/errors.hpp"
#include "c4tail/kernel.hpp"
#include "c4tail/rates.hpp"
#include "c4tail/weighted_c4.hpp"

namespace c4tail {

using EdgeWeightVector = std::vector<double>;

inline double inhomogeneous_c4_expectation(std::span<const double> q, int n) {
  return weighted_c4_expectation(n, q);
}

inline EdgeWeightVector c4_expectation_gradient(std::span<const double> q, int n) {
  return weighted_c4_gradient(n, q);
}

inline double total_entropy(std::span<const double> q, double p) {
  double s = 0.0;
  for (double v : q) s += relative_entropy(v, p);
  return s;
}

enum class MeanfieldMethod { Ansatz, General };

inline const char* method_name(MeanfieldMethod m) {
  return m == MeanfieldMethod::Ansatz ? "ANSATZ" : "GENERAL";
}

struct MeanfieldSolution {
  EdgeWeightVector q_star;
  double cost = 0;
  double constraint_value = 0;
  double target = 0;  // (1+delta) E[X]
  MeanfieldMethod method = MeanfieldMethod::Ansatz;
  int block_a = 0, block_b = 0;  // ansatz block K_{a,b} (vertices 0..a-1 and a..a+b-1)
  double block_w = 0;
  int iterations = 0;
};

inline constexpr int kMeanfieldMaxN = 120;
inline constexpr double kFeasibilityTol = 1e-6;

namespace detail {

// E[X] when pairs between the first a vertices and the next b carry w and
// every other pair carries p.  Sums over ordered cycle 4-tuples by vertex
// type (A, B, other); each induced cycle appears 8 times.
inline double block_c4_expectation(int n, int a, int b, double w, double p) {
  const std::array<double, 3> size = {double(a), double(b), double(n - a - b)};
  auto q = [&](int s, int t) { return (s == 0 && t == 1) || (s == 1 && t == 0) ? w : p; };
  double total = 0.0;
  for (int code = 0; code < 81; ++code) {
    const std::array<int, 4> t = {code % 3, code / 3 % 3, code / 9 % 3, code / 27};
    std::array<double, 3> seen{};
    double ways = 1.0;
    for (int i = 0; i < 4; ++i) ways *= size[t[i]] - seen[t[i]]++;
    if (ways <= 0.0) continue;
    total += ways * q(t[0], t[1]) * q(t[1], t[2]) * q(t[2], t[3]) * q(t[3], t[0]) *
             (1.0 - q(t[0], t[2])) * (1.0 - q(t[1], t[3]));
  }
  return total / 8.0;
}

inline EdgeWeightVector block_weights(int n, int a, int b, double w, double p) {
  EdgeWeightVector q(num_pairs(n), p);
  for (int u = 0; u < a; ++u)
    for (int v = a; v < a + b; ++v) q[pair_index(u, v)] = w;
  return q;
}

// Smallest w in [p,1] with block expectation >= target: scan, then bisect.
inline std::optional<double> min_block_weight(int n, int a, int b, double p, double target) {
  constexpr int kScan = 256;
  double prev = p;
  if (block_c4_expectation(n, a, b, p, p) >= target) return p;
  for (int i = 1; i <= kScan; ++i) {
    const double w = p + (1.0 - p) * i / kScan;
    if (block_c4_expectation(n, a, b, w, p) >= target) {
      double lo = prev, hi = w;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (block_c4_expectation(n, a, b, mid, p) >= target ? hi : lo) = mid;
      }
      return hi;
    }
    prev = w;
  }
  return std::nullopt;
}

inline void check_meanfield_args(int n, double p, double delta) {
  if (n < 4) throw DomainError("meanfield: n must be >= 4");
  if (n > kMeanfieldMaxN) throw BudgetError("meanfield: n exceeds 120");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("meanfield: p must lie in (0,1)");
  if (!(delta >= 0.0)) throw DomainError("meanfield: delta must be nonnegative");
}

}  // namespace detail

// Best K_{a,b} block at weight w (p elsewhere).
inline MeanfieldSolution solve_ansatz(int n, double p, double delta) {
  detail::check_meanfield_args(n, p, delta);
  const double target = (1.0 + delta) * expected_induced_c4(n, p);
  MeanfieldSolution best;
  best.target = target;
  best.method = MeanfieldMethod::Ansatz;
  if (delta == 0.0) {
    best.q_star.assign(num_pairs(n), p);
    best.constraint_value = inhomogeneous_c4_expectation(best.q_star, n);
    return best;
  }
  best.cost = std::numeric_limits<double>::infinity();
  for (int a = 1; a <= n; ++a)
    for (int b = a; a + b <= n; ++b) {
      if (a * b * relative_entropy(p + 1e-300, p) >= best.cost) continue;
      const auto w = detail::min_block_weight(n, a, b, p, target);
      if (!w) continue;
      const double cost = a * b * relative_entropy(*w, p);
      if (cost < best.cost) {
        best.cost = cost;
        best.block_a = a;
        best.block_b = b;
        best.block_w = *w;
      }
    }
  if (!std::isfinite(best.cost)) throw InfeasibleError("solve_ansatz: no block reaches the target");
  best.q_star = detail::block_weights(n, best.block_a, best.block_b, best.block_w, p);
  best.constraint_value = inhomogeneous_c4_expectation(best.q_star, n);
  return best;
}

struct GeneralSolverOptions {
  int random_starts = 2;
  int iterations_per_stage = 150;
  int stages = 6;
  double initial_penalty = 0.0;  // 0: scale from the problem
};

namespace detail {

struct PenaltyProblem {
  int n;
  double p, target, mu;
  double lo, hi;

  double value(const EdgeWeightVector& q, double* ex = nullptr) const {
    const double e = weighted_c4_expectation(n, q);
    if (ex) *ex = e;
    const double short_by = std::max(0.0, target - e);
    return total_entropy(q, p) + mu * short_by * short_by;
  }

  EdgeWeightVector gradient(const EdgeWeightVector& q) const {
    double e = 0.0;
    EdgeWeightVector g = weighted_c4_gradient(n, q, &e);
    const double short_by = std::max(0.0, target - e);
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double dI = std::log(q[i] / p) - std::log((1.0 - q[i]) / (1.0 - p));
      g[i] = dI - 2.0 * mu * short_by * g[i];
    }
    return g;
  }

  void clip(EdgeWeightVector& q) const {
    for (double& v : q) v = std::clamp(v, lo, hi);
  }
};

// Restores feasibility of a nearly feasible q: first by stretching the
// tilt q - p (smallest feasible stretch, clipped to [p, hi]), else by
// mixing toward the feasible anchor.
inline EdgeWeightVector repair(int n, double p, double hi, const EdgeWeightVector& q,
                               const EdgeWeightVector& anchor, double target) {
  if (weighted_c4_expectation(n, q) >= target) return q;
  auto stretch = [&](double s) {
    EdgeWeightVector r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = std::clamp(p + s * (q[i] - p), p, hi);
    return r;
  };
  auto mix = [&](double l) {
    EdgeWeightVector r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = (1.0 - l) * q[i] + l * anchor[i];
    return r;
  };
  double top = 1.0;
  for (int it = 0; it < 8 && weighted_c4_expectation(n, stretch(top)) < target; ++it) top = 1.0 + 2.0 * (top - 1.0) + 1e-3;
  auto bisect = [&](auto&& path, double lo, double up) {
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (lo + up);
      (weighted_c4_expectation(n, path(mid)) >= target ? up : lo) = mid;
    }
    return path(up);
  };
  if (weighted_c4_expectation(n, stretch(top)) >= target) return bisect(stretch, 1.0, top);
  return bisect(mix, 0.0, 1.0);
}

}  // namespace detail

// Projected gradient with a quadratic penalty, penalty continuation and
// multiple starts (ansatz block plus seeded random perturbations of it).
inline MeanfieldSolution solve_general(int n, double p, double delta, std::uint64_t seed,
                                       const GeneralSolverOptions& opt = {}) {
  detail::check_meanfield_args(n, p, delta);
  const MeanfieldSolution anchor = solve_ansatz(n, p, delta);
  MeanfieldSolution best = anchor;
  best.method = MeanfieldMethod::General;
  if (delta == 0.0) return best;
  const double target = anchor.target;

  std::mt19937_64 rng(seed);
  std::vector<EdgeWeightVector> starts{anchor.q_star};
  for (int s = 0; s < opt.random_starts; ++s) {
    std::uniform_real_distribution<double> jitter(0.5, 1.5);
    EdgeWeightVector q = anchor.q_star;
    for (double& v : q) v = std::clamp(p + (v - p) * jitter(rng) + p * (jitter(rng) - 1.0) * 0.5, p, 1.0);
    starts.push_back(std::move(q));
  }

  for (const EdgeWeightVector& start : starts) {
    detail::PenaltyProblem P{n, p, target, 0.0, p, 1.0 - 1e-12};
    P.mu = opt.initial_penalty > 0 ? opt.initial_penalty : 10.0 * anchor.cost / (target * target);
    EdgeWeightVector q = start;
    P.clip(q);
    double step = 1.0;
    int iters = 0;
    for (int stage = 0; stage < opt.stages; ++stage) {
      double f = P.value(q);
      EdgeWeightVector g = P.gradient(q), prev_q, prev_g;
      for (int it = 0; it < opt.iterations_per_stage; ++it, ++iters) {
        // Step from 1/L estimated by gradient differences, halved until the value drops.
        if (!prev_q.empty()) {
          double dq = 0, dg = 0;
          for (std::size_t i = 0; i < q.size(); ++i) {
            dq += (q[i] - prev_q[i]) * (q[i] - prev_q[i]);
            dg += (g[i] - prev_g[i]) * (g[i] - prev_g[i]);
          }
          if (dg > 0 && dq > 0) step = std::sqrt(dq / dg);
        }
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls, step *= 0.5) {
          EdgeWeightVector trial(q.size());
          for (std::size_t i = 0; i < q.size(); ++i) trial[i] = q[i] - step * g[i];
          P.clip(trial);
          const double ft = P.value(trial);
          if (ft < f) {
            prev_q = std::move(q);
            prev_g = std::move(g);
            q = std::move(trial);
            f = ft;
            g = P.gradient(q);
            moved = true;
            break;
          }
        }
        if (!moved) break;
      }
      double ex = 0.0;
      P.value(q, &ex);
      if (ex >= target * (1.0 - kFeasibilityTol)) break;
      P.mu *= 10.0;
    }
    const EdgeWeightVector feasible = detail::repair(n, p, P.hi, q, anchor.q_star, target);
    const double cost = total_entropy(feasible, p);
    if (cost < best.cost) {
      best.q_star = feasible;
      best.cost = cost;
      best.constraint_value = weighted_c4_expectation(n, feasible);
      best.iterations = iters;
    }
  }
  return best;
}

// Degree-sum estimates on u = q - p, as ratios to their scales (the
// constants D are not known, so these are reported, never asserted).
struct DegreeSumDiagnostics {
  double b = 0;
  double degree_square_ratio = 0;  // sum_x (sum_y u_xy)^2 / (n^3 p^2 b)
  double mass_ratio = 0;           // sum u / (n^2 p^{3/2} sqrt(log(1/p)))
  double square_ratio = 0;         // sum u^2 / (n^2 p^2)
};

// b = 0 picks sqrt(max(n p^2, sqrt(p log(1/p)))), between the lower scale and 1.
inline DegreeSumDiagnostics degree_sum_diagnostics(std::span<const double> q, int n, double p,
                                                   double b = 0.0) {
  detail::require(q.size() == num_pairs(n), "degree_sum_diagnostics: length mismatch");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("degree_sum_diagnostics: p must lie in (0,1)");
  const double L = std::log(1 / p);
  DegreeSumDiagnostics d;
  d.b = b > 0 ? b : std::sqrt(std::max(n * p * p, std::sqrt(p * L)));
  std::vector<double> deg(n, 0.0);
  double mass = 0, sq = 0;
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u) {
      const double x = std::max(0.0, q[pair_index(u, v)] - p);
      deg[u] += x;
      deg[v] += x;
      mass += x;
      sq += x * x;
    }
  double dsq = 0;
  for (double x : deg) dsq += x * x;
  const double nn = static_cast<double>(n);
  d.degree_square_ratio = dsq / (nn * nn * nn * p * p * d.b);
  d.mass_ratio = mass / (nn * nn * std::pow(p, 1.5) * std::sqrt(L));
  d.square_ratio = sq / (nn * nn * p * p);
  return d;
}

struct GapReport {
  RegimeDescriptor regime;
  double meanfield_norm = 0, family_norm = 0, ratio = 0;
};

// Family rate over the mean-field rate sqrt(delta/2); the ratio is rho_k.
inline GapReport gap_report(double n, double p, double delta) {
  GapReport g;
  g.regime = regime_classify(n, p);
  g.meanfield_norm = std::sqrt(delta / 2.0);
  switch (g.regime.label) {
    case RegimeLabel::SparseK:
      g.ratio = rho_k(*g.regime.k, n, p);
      g.family_norm = g.ratio * g.meanfield_norm;
      break;
    case RegimeLabel::SparseDense:
      g.ratio = 1.0;
      g.family_norm = g.meanfield_norm;
      break;
    case RegimeLabel::Dense:
      throw DomainError("gap_report: the dense regime has no sparse family comparison");
  }
  return g;
}

struct EntropyAsymptotics {
  double p = 0;
  double small_x = 0, small_ratio = 0;  // I_p(p+x) 2p / x^2 at x = p/100
  double large_x = 0, large_ratio = 0;  // I_p(p+x) / (x log(x/p)) at x = 100p
  int minorant_points = 0, minorant_violations = 0;
};

// Checks the small/large-x forms of I_p(p+x) and the quadratic minorant
// I_p(p+x) >= x^2 I_p(p+b)/b^2 for 0 <= x <= b <= 1-p-1/log(1/p).
inline EntropyAsymptotics entropy_asymptotics_check(double p, int grid = 60) {
  if (!(p > 0.0 && p <= 0.01)) throw DomainError("entropy_asymptotics_check: needs 0 < p <= 0.01");
  if (!(100.0 * p <= 1.0 - p)) throw DomainError("entropy_asymptotics_check: 100p exceeds 1-p");
  EntropyAsymptotics r;
  r.p = p;
  r.small_x = p / 100.0;
  r.small_ratio = relative_entropy(p + r.small_x, p) * 2.0 * p / (r.small_x * r.small_x);
  r.large_x = 100.0 * p;
  r.large_ratio = relative_entropy(p + r.large_x, p) / (r.large_x * std::log(r.large_x / p));
  const double bmax = 1.0 - p - 1.0 / std::log(1.0 / p);
  if (bmax <= 0.0) return r;
  for (int i = 1; i <= grid; ++i) {
    // b log-spaced from p/100 to bmax, x log-spaced from b/1e4 to b.
    const double b = std::exp(std::log(p / 100.0) + (std::log(bmax) - std::log(p / 100.0)) * i / grid);
    const double Ib = relative_entropy(p + b, p);
    for (int j = 0; j <= grid; ++j) {
      const double x = b * std::exp(std::log(1e-4) * (grid - j) / grid);
      ++r.minorant_points;
      if (relative_entropy(p + x, p) < x * x * Ib / (b * b) * (1.0 - 1e-12)) ++r.minorant_violations;
    }
  }
  return r;
}

}  // namespace c4tail
