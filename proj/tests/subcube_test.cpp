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


#include "c4tail/subcube.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"

namespace c4tail {
namespace {

Subcube random_subcube(std::size_t N, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> t(0, 2);
  Subcube F(N);
  for (std::size_t i = 0; i < N; ++i) {
    const int v = t(rng);
    if (v) F.fix(i, v == 1);
  }
  return F;
}

TEST(Subcube, Codims) {
  EXPECT_EQ(codims(Subcube(10)), (Codims{0, 0, 0}));
  Subcube F(10);
  for (std::size_t i : {0, 1, 2}) F.fix(i, true);
  for (std::size_t i : {5, 7}) F.fix(i, false);
  EXPECT_EQ(codims(F), (Codims{5, 2, 3}));
  Subcube point(6);
  for (std::size_t i = 0; i < 6; ++i) point.fix(i, i % 3 == 0);
  EXPECT_EQ(codims(point), (Codims{6, 4, 2}));
  EXPECT_THROW(F.fix(10, true), DomainError);
}

TEST(Subcube, Intersect) {
  Subcube F(6);
  F.fix(1, true);
  F.fix(2, false);
  EXPECT_EQ(intersect(F, Subcube(6)), F);
  Subcube G(6);
  G.fix(1, false);
  EXPECT_FALSE(intersect(F, G).has_value());
  Subcube H(6);
  for (std::size_t i : {3, 4, 5}) H.fix(i, true);
  EXPECT_EQ(codims(*intersect(F, H)).codim, 5u);
  EXPECT_THROW(intersect(F, Subcube(7)), DomainError);
}

TEST(Subcube, Supcubes) {
  Subcube ones(6), zeros(6);
  ones.fix(0, true);
  ones.fix(4, true);
  zeros.fix(2, false);
  EXPECT_EQ(supcubes(ones).one, ones);
  EXPECT_EQ(supcubes(ones).zero, Subcube(6));
  EXPECT_EQ(supcubes(zeros).zero, zeros);
  EXPECT_EQ(supcubes(zeros).one, Subcube(6));
}

TEST(Subcube, RandomAlgebra) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const Subcube a = random_subcube(15, rng), b = random_subcube(15, rng);
    if (auto c = intersect(a, b)) {
      EXPECT_LE(codims(*c).codim, codims(a).codim + codims(b).codim);
    }
    const Supcubes s = supcubes(a);
    EXPECT_EQ(intersect(s.one, s.zero), a);
    const Codims c = codims(a);
    EXPECT_EQ(c.codim, c.codim0 + c.codim1);
  }
}

TEST(Subcube, Expectation) {
  EXPECT_DOUBLE_EQ(subcube_expectation_c4(Subcube(10), 5, 0.3), expected_induced_c4(5, 0.3));
  Subcube F = Subcube::planted(cycle_graph(4), 4);
  EXPECT_DOUBLE_EQ(subcube_expectation_c4(F, 4, 0.5), 0.25);
  F.fix(pair_index(0, 2), false);
  F.fix(pair_index(1, 3), false);
  EXPECT_DOUBLE_EQ(subcube_expectation_c4(F, 4, 0.37), 1.0);
  EXPECT_THROW(subcube_expectation_c4(Subcube(10), 4, 0.3), DomainError);
}

TEST(Subcube, ExpectationMatchesEnumeration) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const Subcube F = random_subcube(10, rng);
    std::uint64_t f1 = 0, f0 = 0;
    for (const auto& [i, bit] : F.fixed()) (bit ? f1 : f0) |= std::uint64_t{1} << i;
    const double want = testing::conditional_mean(
        5, 0.3, f1, f0, [](std::uint64_t g) { return testing::brute_c4(5, g); });
    EXPECT_NEAR(subcube_expectation_c4(F, 5, 0.3), want, 1e-12);
  }
}

TEST(Subcube, Serialization) {
  std::mt19937_64 rng(3);
  const Subcube F = random_subcube(21, rng);
  std::stringstream ss;
  write_subcube(ss, F);
  EXPECT_EQ(read_subcube(ss), F);
  std::istringstream bad1("3 1\n3 1\n"), bad2("3 1\n0 2\n"), bad3("3 2\n0 1\n"), bad4("3 2\n0 1\n0 0\n");
  EXPECT_THROW(read_subcube(bad1), DomainError);
  EXPECT_THROW(read_subcube(bad2), DomainError);
  EXPECT_THROW(read_subcube(bad3), DomainError);
  EXPECT_THROW(read_subcube(bad4), DomainError);
}

TEST(Phi, Trivial) {
  EXPECT_EQ(phi_bruteforce(5, 0.3, 0.0, false), 0.0);
  EXPECT_EQ(phi_bruteforce(6, 0.3, 0.0, true), 0.0);
  // max X on 4 vertices is 1; E[X] = 3/64 at p = 1/2.
  EXPECT_TRUE(std::isinf(phi_bruteforce(4, 0.5, 64.0 / 3.0, false)));
  EXPECT_THROW(phi_bruteforce(7, 0.3, 1.0, false), BudgetError);
  EXPECT_THROW(phi_bruteforce(8, 0.3, 1.0, true), BudgetError);
  EXPECT_THROW(phi_bruteforce(5, 1.0, 1.0, true), DomainError);
}

TEST(Phi, OneSupcubeN5Fixture) {
  const double v = phi_bruteforce(5, 0.3, 1.0, true);
  EXPECT_NEAR(v, testing::brute_phi(5, 0.3, 1.0, true), 1e-12);
  // Frozen: the cheapest qualifying plant at n=5, p=0.3, delta=1 has 2 edges.
  EXPECT_NEAR(v, 2 * std::log(1 / 0.3), 1e-12);
}

TEST(Phi, GeneralMatchesEnumeration) {
  for (double delta : {0.5, 1.0, 3.0, 10.0})
    EXPECT_NEAR(phi_bruteforce(4, 0.4, delta, false), testing::brute_phi(4, 0.4, delta, false), 1e-12);
  EXPECT_NEAR(phi_bruteforce(5, 0.3, 2.0, false), testing::brute_phi(5, 0.3, 2.0, false), 1e-12);
}

TEST(Phi, GeneralNeverAboveOneSupcube) {
  for (double delta : {0.5, 1.0, 2.0})
    EXPECT_LE(phi_bruteforce(5, 0.3, delta, false), phi_bruteforce(5, 0.3, delta, true));
}

TEST(Phi, TailInequalityTinyN) {
  const double eps = 0.25, delta = 1.0, p = 0.3;
  for (int n : {5, 6}) {
    const double E = expected_induced_c4(n, p);
    const double lhs = -std::log(testing::brute_tail(n, p, (1 + delta) * E));
    const double rhs = phi_bruteforce(n, p, delta + eps, false) +
                       std::log(testing::brute_max_c4(n) / (eps * E));
    EXPECT_LE(lhs, rhs) << "n=" << n;
  }
}

}  // namespace
}  // namespace c4tail
