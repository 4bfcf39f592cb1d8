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


#include "c4tail/montecarlo.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

namespace c4tail {
namespace {

using Ctr = Philox4x32::Counter;

TEST(Philox, KnownAnswers) {
  EXPECT_EQ(Philox4x32::block({0, 0, 0, 0}, {0, 0}),
            (Ctr{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                              {0xffffffff, 0xffffffff}),
            (Ctr{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                              {0xa4093822, 0x299f31d0}),
            (Ctr{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Wilson, Basics) {
  auto [lo, hi] = wilson_interval(0, 10);
  EXPECT_EQ(lo, 0.0);
  EXPECT_GT(hi, 0.0);
  auto [a, b] = wilson_interval(10, 10);
  EXPECT_EQ(b, 1.0);
  EXPECT_LT(a, 1.0);
  // Textbook value: 8/10 -> [0.4902, 0.9433].
  auto [c, d] = wilson_interval(8, 10);
  EXPECT_NEAR(c, 0.4902, 1e-4);
  EXPECT_NEAR(d, 0.9433, 1e-4);
}

TEST(SampleGnp, Trivial) {
  EXPECT_EQ(sample_gnp(9, 0.0, 1).num_edges(), 0u);
  EXPECT_EQ(sample_gnp(9, 1.0, 1), complete_graph(9));
  EXPECT_EQ(sample_gnp(12, 0.4, 77), sample_gnp(12, 0.4, 77));
  EXPECT_NE(sample_gnp(12, 0.4, 77), sample_gnp(12, 0.4, 78));
  EXPECT_NE(sample_gnp(12, 0.4, 77, 0), sample_gnp(12, 0.4, 77, 1));
  EXPECT_THROW(sample_gnp(5, 1.5, 1), DomainError);
}

TEST(SampleGnp, MaskPathAgrees) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    CounterStream rng(5, t, 0);
    EXPECT_EQ(detail::draw_mask(9, 0.37, rng), sample_gnp(9, 0.37, 5, t).edge_mask());
  }
}

TEST(SampleGnp, EdgeMean) {
  const int n = 20, T = 100000;
  const double p = 0.3, N = 190;
  double s = 0;
  for (int t = 0; t < T; ++t) s += static_cast<double>(sample_gnp(n, p, 2024, t).num_edges());
  const double sigma = std::sqrt(N * p * (1 - p) / T);
  EXPECT_LT(std::abs(s / T - N * p), 4 * sigma);
}

struct Moments {
  double mean = 0, var = 0;
};

// Exact mean and variance of X over graphs on n <= 7 satisfying keep(mask).
template <class Keep>
Moments conditional_moments(int n, double p, Keep keep) {
  const int N = static_cast<int>(num_pairs(n));
  double z = 0, s1 = 0, s2 = 0;
  for (std::uint64_t g = 0; g <= testing::full_mask(n); ++g) {
    if (!keep(g)) continue;
    const int e = std::popcount(g);
    const double w = std::pow(p, e) * std::pow(1 - p, N - e);
    const double x = testing::brute_c4(n, g);
    z += w;
    s1 += w * x;
    s2 += w * x * x;
  }
  return {s1 / z, s2 / z - (s1 / z) * (s1 / z)};
}

TEST(Conditioned, EventAndMean) {
  const int n = 6, k = 2, T = 10000;
  const double p = 0.3;
  const std::set<int> A = {3, 5};
  const Moments m = conditional_moments(
      n, p, [&](std::uint64_t g) { return satisfies_FAk(SimpleGraph::from_mask(n, g), k, A); });
  double s = 0;
  for (int t = 0; t < T; ++t) {
    const SimpleGraph g = sample_conditioned_FAk(n, p, k, A, 11, t);
    ASSERT_TRUE(satisfies_FAk(g, k, A));
    s += static_cast<double>(count_induced(g, Pattern::C4));
  }
  EXPECT_LT(std::abs(s / T - m.mean), 4 * std::sqrt(m.var / T));
}

TEST(Conditioned, LargerKAndSmallP) {
  const std::set<int> A = {4, 9, 17};
  for (int t = 0; t < 300; ++t)
    ASSERT_TRUE(satisfies_FAk(sample_conditioned_FAk(30, 0.01, 4, A, 3, t), 4, A));
}

TEST(Conditioned, Degenerate) {
  EXPECT_EQ(sample_conditioned_FAk(10, 0.3, 0, {}, 8, 4), sample_gnp(10, 0.3, 8, 4));
  EXPECT_THROW(sample_conditioned_FAk(6, 0.3, 2, {1}, 1), DomainError);
  EXPECT_THROW(sample_conditioned_FAk(6, 0.3, 2, {6}, 1), DomainError);
  EXPECT_THROW(sample_conditioned_FAk(6, 0.0, 2, {3}, 1), InfeasibleError);
  EXPECT_THROW(sample_conditioned_FAk(6, 1.0, 2, {3}, 1), InfeasibleError);
  EXPECT_NO_THROW(sample_conditioned_FAk(6, 1.0, 2, {2, 3, 4, 5}, 1));
}

TEST(Planted, MatchesConditionedExpectation) {
  const int n = 6, T = 20000;
  const double p = 0.3;
  const std::vector<SimpleGraph> plants = {
      SimpleGraph(6), SimpleGraph(4, {{0, 1}, {1, 2}, {2, 3}}), cycle_graph(4), complete_bipartite(2, 2).embedded(5),
      SimpleGraph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}}), SimpleGraph(6, {{0, 5}, {1, 4}})};
  for (std::size_t i = 0; i < plants.size(); ++i) {
    const std::uint64_t need = plants[i].edge_mask();
    const Moments m = conditional_moments(n, p, [&](std::uint64_t g) { return (g & need) == need; });
    EXPECT_NEAR(m.mean, conditioned_expectation_c4(plants[i], n, p), 1e-12);
    double s = 0;
    for (int t = 0; t < T; ++t) {
      const SimpleGraph g = sample_planted(n, p, plants[i], 40 + i, t);
      s += static_cast<double>(count_induced(g, Pattern::C4));
    }
    EXPECT_LT(std::abs(s / T - m.mean), 4 * std::sqrt(m.var / T)) << i;
  }
}

TEST(EstimateTail, Trivial) {
  const TailEstimate e = estimate_tail(8, 0.3, -1.5, 10, 1);
  EXPECT_EQ(e.p_hat, 1.0);
  EXPECT_EQ(e.ci_high, 1.0);
  EXPECT_LE(e.ci_low, e.p_hat);
  EXPECT_EQ(estimate_tail(3, 0.3, 1, 10, 1).p_hat, 1.0);
  EXPECT_THROW(estimate_tail(6, 0.3, 1, 0, 1), DomainError);
}

TEST(EstimateTail, WorkerIndependent) {
  const TailEstimate a = estimate_tail(7, 0.3, 1, 20000, 5, 1);
  const TailEstimate b = estimate_tail(7, 0.3, 1, 20000, 5, 3);
  const TailEstimate c = estimate_tail(7, 0.3, 1, 20000, 5, 8);
  EXPECT_EQ(a.successes, b.successes);
  EXPECT_EQ(a.successes, c.successes);
  // Same trials through the general (non-mask) path.
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < 2000; ++t)
    hits += static_cast<double>(count_induced(sample_gnp(7, 0.3, 5, t), Pattern::C4)) >= a.threshold;
  EXPECT_EQ(estimate_tail(7, 0.3, 1, 2000, 5).successes, hits);
}

TEST(EstimateTail, OracleAndScaling) {
  const double p = 0.3;
  const double thr = 2 * expected_induced_c4(6, p);
  const double exact = exact_tail_probability(6, p, thr).probability;
  EXPECT_NEAR(exact, testing::brute_tail(6, p, thr), 1e-12);
  const TailEstimate e = estimate_tail(6, p, 1, 100000, 7);
  EXPECT_EQ(e.threshold, thr);
  EXPECT_LE(e.ci_low, exact);
  EXPECT_GE(e.ci_high, exact);
  const TailEstimate f = estimate_tail(6, p, 1, 200000, 7);
  EXPECT_NEAR((e.ci_high - e.ci_low) / (f.ci_high - f.ci_low), std::sqrt(2.0), 0.05);
}

}  // namespace
}  // namespace c4tail
