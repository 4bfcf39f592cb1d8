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


#include "c4tail/meanfield.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

namespace c4tail {
namespace {

EdgeWeightVector random_q(int n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(lo, hi);
  EdgeWeightVector q(num_pairs(n));
  for (double& v : q) v = U(rng);
  return q;
}

// Exact expectation by enumerating all graphs (n <= 5).
double brute_expectation(int n, const EdgeWeightVector& q) {
  const int N = static_cast<int>(num_pairs(n));
  double s = 0;
  for (std::uint64_t g = 0; g <= testing::full_mask(n); ++g) {
    double w = 1;
    for (int i = 0; i < N; ++i) w *= (g >> i & 1) ? q[i] : 1 - q[i];
    s += w * testing::brute_c4(n, g);
  }
  return s;
}

TEST(Inhomogeneous, Homogeneous) {
  for (int n = 4; n <= 30; n += 2) {
    const double p = 0.17;
    const EdgeWeightVector q(num_pairs(n), p);
    EXPECT_NEAR(inhomogeneous_c4_expectation(q, n), expected_induced_c4(n, p), 1e-10 * expected_induced_c4(n, p));
  }
  EXPECT_EQ(inhomogeneous_c4_expectation(EdgeWeightVector(num_pairs(7), 1.0), 7), 0.0);
}

TEST(Inhomogeneous, MatchesEnumeration) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    const EdgeWeightVector q = random_q(5, 0, 1, rng);
    EXPECT_NEAR(inhomogeneous_c4_expectation(q, 5), brute_expectation(5, q), 1e-12);
  }
}

TEST(Inhomogeneous, PlantAgreesWithConditioning) {
  EdgeWeightVector q(6, 0.3);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 3}, {0, 3}}) q[pair_index(u, v)] = 1.0;
  EXPECT_NEAR(inhomogeneous_c4_expectation(q, 4), conditioned_expectation_c4(cycle_graph(4), 4, 0.3), 1e-15);
}

TEST(Gradient, HandExpandedN4) {
  // n = 4: E = sum over 3 pairings of (cycle product)(1-d1)(1-d2).
  std::mt19937_64 rng(52);
  const EdgeWeightVector q = random_q(4, 0, 1, rng);
  const auto w = [&](int u, int v) { return q[pair_index(u, v)]; };
  const EdgeWeightVector g = c4_expectation_gradient(q, 4);
  ASSERT_EQ(g.size(), 6u);
  // d/d q01: q01 is a cycle edge in 0-1-2-3 and 0-1-3-2, a diagonal in 0-2-1-3.
  const double want = w(1, 2) * w(2, 3) * w(0, 3) * (1 - w(0, 2)) * (1 - w(1, 3)) +
                      w(1, 3) * w(2, 3) * w(0, 2) * (1 - w(0, 3)) * (1 - w(1, 2)) -
                      w(0, 2) * w(1, 2) * w(1, 3) * w(0, 3) * (1 - w(2, 3));
  EXPECT_NEAR(g[pair_index(0, 1)], want, 1e-15);
}

TEST(Gradient, FiniteDifferences) {
  std::mt19937_64 rng(53);
  for (int n : {6, 8, 10}) {
    for (int t = 0; t < 5; ++t) {
      EdgeWeightVector q = random_q(n, 0, 1, rng);
      const EdgeWeightVector g = c4_expectation_gradient(q, n);
      for (std::size_t i = 0; i < q.size(); ++i) {
        const double h = 1e-6, keep = q[i];
        q[i] = keep + h;
        const double up = inhomogeneous_c4_expectation(q, n);
        q[i] = keep - h;
        const double dn = inhomogeneous_c4_expectation(q, n);
        q[i] = keep;
        EXPECT_NEAR(g[i], (up - dn) / (2 * h), 1e-5 * std::max(1.0, std::abs(g[i])));
      }
    }
  }
  // At q == 1 only the diagonal factors carry a derivative.
  const EdgeWeightVector ones(num_pairs(5), 1.0);
  for (double v : c4_expectation_gradient(ones, 5)) EXPECT_NEAR(v, 0.0, 0.0);
}

TEST(Ansatz, BlockFormulaMatchesSum) {
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; a + b <= 9; ++b) {
      const EdgeWeightVector q = detail::block_weights(9, a, b, 0.7, 0.2);
      EXPECT_NEAR(detail::block_c4_expectation(9, a, b, 0.7, 0.2), inhomogeneous_c4_expectation(q, 9), 1e-12);
    }
}

TEST(Ansatz, Examples) {
  const MeanfieldSolution z = solve_ansatz(12, 0.2, 0.0);
  EXPECT_EQ(z.cost, 0.0);
  for (double v : z.q_star) EXPECT_EQ(v, 0.2);
  const int n = 30;
  const double p = std::pow(n, -0.6), delta = 1;
  const MeanfieldSolution s = solve_ansatz(n, p, delta);
  EXPECT_GE(s.constraint_value, s.target * (1 - 1e-9));
  const double m0 = plant_size(0, expected_induced_c4(n, p), delta, 0);
  const int side = static_cast<int>(std::ceil(std::sqrt(m0)));
  const EdgeWeightVector plant = detail::block_weights(n, side, side, 1.0, p);
  ASSERT_GE(inhomogeneous_c4_expectation(plant, n), s.target);
  EXPECT_LE(s.cost, side * side * std::log(1 / p));
  EXPECT_THROW(solve_ansatz(121, 0.1, 1), BudgetError);
  EXPECT_THROW(solve_ansatz(4, 0.5, 100), InfeasibleError);
}

TEST(General, SandwichAndFeasibility) {
  const int n = 24;
  const double p = std::pow(n, -0.6);
  const MeanfieldSolution a = solve_ansatz(n, p, 1);
  const MeanfieldSolution g = solve_general(n, p, 1, 3);
  EXPECT_EQ(g.method, MeanfieldMethod::General);
  EXPECT_GE(g.constraint_value, g.target * (1 - kFeasibilityTol));
  EXPECT_NEAR(g.constraint_value, inhomogeneous_c4_expectation(g.q_star, n), 1e-9);
  EXPECT_NEAR(g.cost, total_entropy(g.q_star, p), 1e-9);
  EXPECT_LE(g.cost, a.cost * 1.01);
  EXPECT_GE(g.cost, 0.0);
  for (double v : g.q_star) EXPECT_GE(v, p);
  const MeanfieldSolution z = solve_general(n, p, 0, 3);
  EXPECT_EQ(z.cost, 0.0);
}

TEST(General, Deterministic) {
  const int n = 14;
  const double p = 0.2;
  EXPECT_EQ(solve_general(n, p, 1, 9).q_star, solve_general(n, p, 1, 9).q_star);
}

TEST(Gap, Examples) {
  const double n = 1e6;
  const GapReport r = gap_report(n, std::pow(n, -0.9), 1);
  EXPECT_EQ(r.regime.name(), "SPARSE_K(2)");
  EXPECT_LT(r.ratio, 1.0);
  EXPECT_NEAR(r.ratio, rho_k(2, n, std::pow(n, -0.9)), 1e-15);
  EXPECT_NEAR(r.family_norm, r.ratio * std::sqrt(0.5), 1e-15);
  double prev = 0;
  for (double e : {-0.70, -0.68, -0.67, -0.6667, -0.66667}) {
    const GapReport s = gap_report(1e12, std::pow(1e12, e), 1);
    EXPECT_GT(s.ratio, prev);
    prev = s.ratio;
  }
  EXPECT_GT(prev, 0.99);
  EXPECT_EQ(gap_report(1e20, std::pow(1e20, -0.6), 1).ratio, 1.0);
  EXPECT_THROW(gap_report(n, 0.1, 1), DomainError);
}

TEST(EntropyAsymptotics, Values) {
  const EntropyAsymptotics e = entropy_asymptotics_check(1e-4);
  EXPECT_NEAR(e.small_ratio, 1.0, 0.05);
  EXPECT_EQ(e.minorant_violations, 0);
  EXPECT_GT(e.minorant_points, 1000);
  // The large-x form converges like 1 - 1/log(x/p).
  EXPECT_NEAR(e.large_ratio, 1.0 - 1.0 / std::log(100.0), 0.05);
  EXPECT_THROW(entropy_asymptotics_check(0.02), DomainError);
}

TEST(Diagnostics, DegreeSums) {
  const int n = 7;
  const double p = 0.1;
  EdgeWeightVector q(num_pairs(n), p);
  const DegreeSumDiagnostics zero = degree_sum_diagnostics(q, n, p, 0.5);
  EXPECT_EQ(zero.degree_square_ratio, 0.0);
  EXPECT_EQ(zero.mass_ratio, 0.0);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 3}}) q[pair_index(u, v)] = 0.6;
  const DegreeSumDiagnostics d = degree_sum_diagnostics(q, n, p, 0.5);
  // Degrees of u: 0.5, 1, 1, 0.5.
  EXPECT_NEAR(d.degree_square_ratio, 2.5 / (343 * 0.01 * 0.5), 1e-12);
  EXPECT_NEAR(d.mass_ratio, 1.5 / (49 * std::pow(0.1, 1.5) * std::sqrt(std::log(10.0))), 1e-12);
  EXPECT_NEAR(d.square_ratio, 0.75 / (49 * 0.01), 1e-12);
  EXPECT_GT(degree_sum_diagnostics(q, n, p).b, 0.0);
}

}  // namespace
}  // namespace c4tail
