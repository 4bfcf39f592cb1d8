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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "c4tail/errors.hpp"
#include "c4tail/graph.hpp"
#include "c4tail/kernel.hpp"
#include "c4tail/philox.hpp"

namespace c4tail {

struct TailEstimate {
  double p_hat = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double ci_low = 0, ci_high = 0;  // Wilson 95%
  std::uint64_t seed = 0;
  double threshold = 0;
};

inline constexpr double kWilsonZ = 1.959963984540054;

inline std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                                 double z = kWilsonZ) {
  detail::require(trials >= 1 && successes <= trials, "wilson_interval: bad counts");
  const double n = static_cast<double>(trials), x = static_cast<double>(successes);
  const double z2 = z * z;
  const double centre = (x + z2 / 2) / (n + z2);
  const double half = z / (n + z2) * std::sqrt(x * (n - x) / n + z2 / 4);
  const double ph = x / n;
  return {std::clamp(centre - half, 0.0, ph), std::clamp(centre + half, ph, 1.0)};
}

// Hardware threads, capped by C4TAIL_THREADS when set.
inline unsigned worker_count() {
  unsigned w = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("C4TAIL_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) w = std::min<unsigned>(w, static_cast<unsigned>(cap));
  }
  return w;
}

namespace detail {

inline void check_probability(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(who) + ": p outside [0,1]");
}

inline constexpr std::uint32_t kFreeStream = 0;
inline constexpr std::uint32_t kPatternStream = 1;

// Pairs are visited in (u, v) order so edges are appended already sorted.
template <class Keep>
SimpleGraph draw_graph(int n, double p, std::uint64_t seed, std::uint64_t trial, Keep keep) {
  CounterStream rng(seed, trial, kFreeStream);
  SimpleGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const int forced = keep(u, v);
      if (forced > 0 || (forced < 0 && rng.bernoulli(pair_index(u, v), p))) g.add_edge(u, v);
    }
  return g;
}

inline std::uint64_t draw_mask(int n, double p, CounterStream& rng) {
  const std::uint64_t t = CounterStream::threshold(p);
  std::uint64_t m = 0;
  const std::size_t N = num_pairs(n);
  for (std::size_t i = 0; i < N; ++i) m |= std::uint64_t{rng.word(i) < t} << i;
  return m;
}

}  // namespace detail

// Trial `trial` of the seeded family; trial 0 is the default draw.
inline SimpleGraph sample_gnp(int n, double p, std::uint64_t seed, std::uint64_t trial = 0) {
  detail::check_probability(p, "sample_gnp");
  return detail::draw_graph(n, p, seed, trial, [](int, int) { return -1; });
}

// Plant edges present, all other pairs G(n,p).
inline SimpleGraph sample_planted(int n, double p, const SimpleGraph& plant, std::uint64_t seed,
                                  std::uint64_t trial = 0) {
  detail::check_probability(p, "sample_planted");
  detail::require(plant.n() <= n, "sample_planted: plant has more vertices than n");
  return detail::draw_graph(n, p, seed, trial,
                            [&](int u, int v) { return plant.has_edge(u, v) ? 1 : -1; });
}

// True iff vertices 0..k-1 are independent and their common neighbourhood is A.
inline bool satisfies_FAk(const SimpleGraph& g, int k, const std::set<int>& A) {
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (g.has_edge(i, j)) return false;
  if (k == 0) return true;
  for (int v = k; v < g.n(); ++v) {
    bool all = true;
    for (int i = 0; i < k && all; ++i) all = g.has_edge(i, v);
    if (all != (A.count(v) > 0)) return false;
  }
  return true;
}

// G(n,p) conditioned on F_{A,k}.  For v outside A the k-edge pattern to
// [k] is drawn edge by edge from its law given "not all present".
inline SimpleGraph sample_conditioned_FAk(int n, double p, int k, const std::set<int>& A,
                                          std::uint64_t seed, std::uint64_t trial = 0) {
  detail::check_probability(p, "sample_conditioned_FAk");
  detail::require(k >= 0 && k <= n, "sample_conditioned_FAk: k outside [0,n]");
  for (int a : A)
    detail::require(a >= k && a < n, "sample_conditioned_FAk: A must lie in [n] minus [k]");
  if (k > 0 && !A.empty() && p == 0.0)
    throw InfeasibleError("sample_conditioned_FAk: A nonempty needs p > 0");
  if (k > 0 && p == 1.0 && static_cast<int>(A.size()) < n - k)
    throw InfeasibleError("sample_conditioned_FAk: p = 1 forces every vertex into A");
  std::vector<Edge> edges;
  CounterStream free(seed, trial, detail::kFreeStream);
  CounterStream pattern(seed, trial, detail::kPatternStream);
  std::vector<double> pk(k + 1);
  for (int r = 0; r <= k; ++r) pk[r] = std::pow(p, r);
  for (int v = k; v < n; ++v) {
    if (A.count(v)) {
      for (int i = 0; i < k; ++i) edges.emplace_back(i, v);
      continue;
    }
    bool all = true;
    for (int i = 0; i < k; ++i) {
      const int r = k - i;
      const double q = all ? p * (1 - pk[r - 1]) / (1 - pk[r]) : p;
      const bool on = pattern.uniform(pair_index(i, v)) < q;
      if (on) edges.emplace_back(i, v);
      all = all && on;
    }
  }
  for (int u = k; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (free.bernoulli(pair_index(u, v), p)) edges.emplace_back(u, v);
  std::sort(edges.begin(), edges.end());
  return SimpleGraph(n, edges);
}

// Fraction of G(n,p) samples with X >= (1+delta) E[X].  Trial t always uses
// counter stream t, so the result does not depend on the worker count.
// workers = 0 means worker_count().
inline TailEstimate estimate_tail(int n, double p, double delta, std::uint64_t trials,
                                  std::uint64_t seed, unsigned workers = 0) {
  detail::check_probability(p, "estimate_tail");
  detail::require(n >= 0, "estimate_tail: negative n");
  if (trials < 1) throw DomainError("estimate_tail: trials must be positive");
  TailEstimate r;
  r.trials = trials;
  r.seed = seed;
  r.threshold = (1 + delta) * expected_induced_c4(n, p);
  if (r.threshold <= 0) {
    r.successes = trials;
  } else if (n < 4) {
    r.successes = 0;
  } else {
    const unsigned W = static_cast<unsigned>(
        std::min<std::uint64_t>(workers ? workers : worker_count(), trials));
    std::vector<std::uint64_t> hits(W, 0);
    const bool small = num_pairs(n) <= 64;
    auto work = [&](unsigned w) {
      const std::uint64_t lo = trials * w / W, hi = trials * (w + 1) / W;
      if (small) {
        const MaskCounter counter(n);
        for (std::uint64_t t = lo; t < hi; ++t) {
          CounterStream rng(seed, t, detail::kFreeStream);
          hits[w] += counter.c4(detail::draw_mask(n, p, rng)) >= r.threshold;
        }
      } else {
        for (std::uint64_t t = lo; t < hi; ++t)
          hits[w] += static_cast<double>(count_induced(sample_gnp(n, p, seed, t), Pattern::C4)) >=
                     r.threshold;
      }
    };
    if (W == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < W; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    for (auto h : hits) r.successes += h;
  }
  r.p_hat = static_cast<double>(r.successes) / static_cast<double>(trials);
  std::tie(r.ci_low, r.ci_high) = wilson_interval(r.successes, trials);
  return r;
}

}  // namespace c4tail
