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

// Closed-form constants and rate formulas for the induced-C4 upper tail.
// Logarithms are natural.  Rates are "normalized" in units of
// n^2 p^2 log(1/p).

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "c4tail/errors.hpp"
#include "c4tail/kernel.hpp"

namespace c4tail {

// I_p(q), the Bernoulli relative entropy.
inline double relative_entropy(double q, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("relative_entropy: p must lie in (0,1)");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("relative_entropy: q must lie in [0,1]");
  if (q == 0.0) return -std::log1p(-p);
  if (q == 1.0) return -std::log(p);
  return q * std::log1p((q - p) / p) + (1.0 - q) * std::log1p((p - q) / (1.0 - p));
}

// c_1 = 0, c_k = 1/(2 + sqrt((k+1)/(k-1))).
inline double phase_boundary(long long k) {
  if (k < 1) throw DomainError("phase_boundary: k must be >= 1");
  if (k == 1) return 0.0;
  const double kd = static_cast<double>(k);
  return 1.0 / (2.0 + std::sqrt((kd + 1.0) / (kd - 1.0)));
}

// r_0 = 2, r_k = 2 sqrt(k/(k-1)).
inline double plant_ratio(int k) {
  if (k == 0) return 2.0;
  if (k < 2) throw DomainError("plant_ratio: k must be 0 or >= 2");
  return 2.0 * std::sqrt(static_cast<double>(k) / (k - 1));
}

// m_k = r_k sqrt((delta+eps) E) for a given expectation E.
inline double plant_size(int k, double expectation, double delta, double eps) {
  return plant_ratio(k) * std::sqrt((delta + eps) * expectation);
}

// m_* = (sqrt(16(delta + 3eps/2) + d^2) - d) sqrt(E) / 2, d = sqrt(2)/(1+eps).
inline double hub_plant_size(double expectation, double delta, double eps) {
  const double d = std::sqrt(2.0) / (1.0 + eps);
  return (std::sqrt(16.0 * (delta + 1.5 * eps) + d * d) - d) * std::sqrt(expectation) / 2.0;
}

struct PlantSizes {
  double expectation = 0;   // E[X]
  std::vector<double> r;    // indexed by k; entry 1 is NaN
  std::vector<double> m;    // m_k = r_k sqrt((delta+eps) E[X])
  double m_star = 0;
  double m_k(int k) const { return m.at(static_cast<std::size_t>(k)); }
};

inline PlantSizes plant_sizes(double n, double p, double delta, double eps, int k_max = 64) {
  if (!(n >= 4)) throw DomainError("plant_sizes: n must be >= 4");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("plant_sizes: p must lie in (0,1)");
  if (k_max < 2) throw DomainError("plant_sizes: k_max must be >= 2");
  PlantSizes s;
  s.expectation = expected_induced_c4(n, p);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  s.r.assign(static_cast<std::size_t>(k_max) + 1, nan);
  s.m.assign(static_cast<std::size_t>(k_max) + 1, nan);
  for (int k = 0; k <= k_max; ++k) {
    if (k == 1) continue;
    s.r[k] = plant_ratio(k);
    s.m[k] = plant_size(k, s.expectation, delta, eps);
  }
  s.m_star = hub_plant_size(s.expectation, delta, eps);
  return s;
}

enum class RegimeLabel { SparseK, SparseDense, Dense };

inline const char* regime_name(RegimeLabel l) {
  switch (l) {
    case RegimeLabel::SparseK: return "SPARSE_K";
    case RegimeLabel::SparseDense: return "SPARSE_DENSE";
    case RegimeLabel::Dense: return "DENSE";
  }
  return "?";
}

struct RegimeDescriptor {
  RegimeLabel label = RegimeLabel::Dense;
  std::optional<long long> k;
  bool boundary_warning = false;  // p in the gap band (n^{-1/2}/log n, n^{-1/2}]

  std::string name() const {
    return label == RegimeLabel::SparseK ? "SPARSE_K(" + std::to_string(*k) + ")" : regime_name(label);
  }
  bool operator==(const RegimeDescriptor&) const = default;
};

// Exponent offset c with p = n^{-1+c}.
inline double regime_exponent(double n, double p) { return 1.0 + std::log(p) / std::log(n); }

// Regimes are compared in exponent space; offsets within this of 1/3 count as n^{-2/3}.
inline constexpr double kExponentSlack = 1e-12;

inline RegimeDescriptor regime_classify(double n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("regime_classify: p must lie in (0,1)");
  if (!(n > 1.0)) throw DomainError("regime_classify: n must exceed 1");
  RegimeDescriptor r;
  const double c = regime_exponent(n, p);
  if (c < 1.0 / 3.0 - kExponentSlack) {
    r.label = RegimeLabel::SparseK;
    long long k = 2;
    if (c > phase_boundary(2)) {
      const double g = std::pow(1.0 / c - 2.0, 2);
      const double guess = std::ceil((g + 1.0) / (g - 1.0));
      k = guess > 4e18 ? 4'000'000'000'000'000'000LL : static_cast<long long>(guess);
      while (k > 2 && phase_boundary(k - 1) >= c) --k;
      while (phase_boundary(k) < c) ++k;
    }
    r.k = k;
    return r;
  }
  const double sqrt_boundary = 1.0 / std::sqrt(n);
  // p = n^{-2/3} itself stays SPARSE_DENSE even when the band is empty (n below ~1e8).
  if (p <= std::max(sqrt_boundary / std::log(n), std::pow(n, -2.0 / 3.0) * (1.0 + 1e-12))) {
    r.label = RegimeLabel::SparseDense;
  } else {
    r.label = RegimeLabel::Dense;
    r.boundary_warning = p <= sqrt_boundary;
  }
  return r;
}

// p at the exponent midpoint of SPARSE_K(k): offset (c_{k-1} + c_k)/2.
inline double regime_midpoint(double n, int k) {
  if (k < 2) throw DomainError("regime_midpoint: k must be >= 2");
  return std::pow(n, -1.0 + 0.5 * (phase_boundary(k - 1) + phase_boundary(k)));
}

struct PhiBounds {
  double lower = 0, upper = 0;
  bool dense = false;
};

inline PhiBounds phi_bounds(double n, double p, double delta, double eps) {
  const RegimeDescriptor r = regime_classify(n, p);
  const double E = expected_induced_c4(n, p), L = -std::log(p);
  PhiBounds b;
  b.dense = r.label == RegimeLabel::Dense;
  if (!b.dense) {
    const double base = 2.0 * std::sqrt(delta * E) * L;
    b.lower = (1.0 - eps) * base;
    b.upper = (1.0 + eps) * base;
  } else {
    const double q = n * n * p * p;
    const double base = (std::sqrt(q * q / 16.0 + 4.0 * delta * E) - q / 4.0) * L;
    b.lower = (1.0 - eps) * base;
    b.upper = (1.0 + eps) * base;
  }
  return b;
}

// log P lower bound from planting.  k >= 2: the K_{k, m_k/k} family,
// (1+eps)(m_k log p + log C(n, round(m_k/k))).  k = 0: the balanced
// m_0 plant, (1+eps) m_0 log p.
inline double planting_log_prob_lower(double n, double p, double delta, double eps, int k) {
  if (k == 1 || k < 0) throw DomainError("planting_log_prob_lower: k must be 0 or >= 2");
  const PlantSizes s = plant_sizes(n, p, delta, eps, std::max(k, 2));
  const double mk = s.m_k(k);
  if (mk == 0.0) return 0.0;
  if (k == 0) return (1.0 + eps) * mk * std::log(p);
  const double side = mk / k;
  if (side < 1.0) throw InfeasibleError("planting_log_prob_lower: smaller plant side is below one vertex");
  const double ell = std::max(1.0, std::round(side));
  return (1.0 + eps) * (mk * std::log(p) + log_binomial(n, static_cast<int>(ell)));
}

inline double dense_planting_log_prob_lower(double n, double p, double delta, double eps) {
  return (1.0 + eps) * plant_sizes(n, p, delta, eps).m_star * std::log(p);
}

// rho_k = sqrt(k/(k-1)) (1 - 2/k + log n / (k log(1/p))).
inline double rho_k(long long k, double n, double p) {
  if (k < 2) throw DomainError("rho_k: k must be >= 2");
  const double kd = static_cast<double>(k);
  return std::sqrt(kd / (kd - 1.0)) * (1.0 - 2.0 / kd + std::log(n) / (kd * -std::log(p)));
}

struct PlantDescription {
  std::string family;  // "K_{k,l}", "K_{a,a}" or "hub"
  double side_small = 0, side_large = 0, edges = 0;
};

struct RateReport {
  RegimeDescriptor regime;
  double normalized_rate = 0;
  double raw_log_prob = 0;
  PlantDescription plant;
  double rho = std::numeric_limits<double>::quiet_NaN();  // SPARSE_K only
  // Alternative dense constant sqrt(d/2 + 1/128) - 1/sqrt(128), for comparison.
  double dense_rate_alt = std::numeric_limits<double>::quiet_NaN();
};

inline RateReport rate_theorem(double n, double p, double delta) {
  if (!(n > 1.0)) throw DomainError("rate_theorem: n must exceed 1");
  if (!(p > 1.0 / n && p < 1.0)) throw DomainError("rate_theorem: p must lie in (1/n, 1)");
  if (!(delta >= 0.0)) throw DomainError("rate_theorem: delta must be nonnegative");
  RateReport rep;
  rep.regime = regime_classify(n, p);
  const double half = std::sqrt(delta / 2.0);
  const double scale = n * n * p * p;
  switch (rep.regime.label) {
    case RegimeLabel::SparseK: {
      const long long k = *rep.regime.k;
      rep.rho = rho_k(k, n, p);
      rep.normalized_rate = rep.rho * half;
      const double mk = std::sqrt(static_cast<double>(k) / (k - 1.0)) * half * scale;
      rep.plant = {"K_{k,l}", static_cast<double>(k), mk / static_cast<double>(k), mk};
      break;
    }
    case RegimeLabel::SparseDense: {
      rep.normalized_rate = half;
      const double m0 = 2.0 * half * scale;
      rep.plant = {"K_{a,a}", std::sqrt(m0), std::sqrt(m0), m0};
      break;
    }
    case RegimeLabel::Dense: {
      rep.normalized_rate = std::sqrt(delta / 2.0 + 1.0 / 16.0) - 0.25;
      const double ms = rep.normalized_rate * scale;
      rep.plant = {"hub", 2.0 * ms / n, n / 2.0, ms};
      break;
    }
  }
  rep.dense_rate_alt = std::sqrt(delta / 2.0 + 1.0 / 128.0) - 1.0 / std::sqrt(128.0);
  rep.raw_log_prob = -rep.normalized_rate * scale * -std::log(p);
  return rep;
}

// Planting bound in normalized units for the regime of (n, p), eps = 0.
inline double normalized_planting_bound(double n, double p, double delta) {
  const RegimeDescriptor r = regime_classify(n, p);
  const double scale = n * n * p * p * -std::log(p);
  double lp = 0;
  switch (r.label) {
    case RegimeLabel::SparseK:
      lp = planting_log_prob_lower(n, p, delta, 0.0, static_cast<int>(std::min<long long>(*r.k, 1 << 20)));
      break;
    case RegimeLabel::SparseDense: lp = planting_log_prob_lower(n, p, delta, 0.0, 0); break;
    case RegimeLabel::Dense: lp = dense_planting_log_prob_lower(n, p, delta, 0.0); break;
  }
  return -lp / scale;
}

}  // namespace c4tail
