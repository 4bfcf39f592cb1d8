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

// The discrete variational problem max{<x,u> : f(x) >= t} over degree-class
// mass vectors.  The optimum is a multiple of e_k for the regime k; the
// mass pushes and a two-coordinate grid search serve as checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "c4tail/errors.hpp"
#include "c4tail/kernel.hpp"
#include "c4tail/mass_vector.hpp"
#include "c4tail/rates.hpp"

namespace c4tail {

// u_1 = 0, u_i = log p - log(n p^2)/i for 2 <= i <= R, u_{R+1} = log p.
using UVector = MassVector;

inline double u_entry(int i, double n, double p) {
  return std::log(p) - std::log(n * p * p) / i;
}

inline UVector u_vector(double n, double p, int R) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("u_vector: p must lie in (0,1)");
  if (R < 2) throw DomainError("u_vector: R must be >= 2");
  UVector u(R);
  for (int i = 2; i <= R; ++i) u[i] = u_entry(i, n, p);
  u[R + 1] = std::log(p);
  return u;
}

inline double inner(const MassVector& x, const MassVector& u) {
  detail::require(x.R() == u.R(), "inner: length mismatch");
  double s = 0.0;
  for (int i = 1; i <= x.size(); ++i) s += x[i] * u[i];
  return s;
}

inline int default_R(double eps) {
  if (!(eps > 0.0)) throw DomainError("default_R: eps must be positive");
  return static_cast<int>(std::min(64.0, std::max(2.0, std::ceil(1.0 / eps))));
}

// f(x) = sum_{i=2}^R (i-1) x_i (sum_{i<j<=R} x_j/(2j) + x_i/(4i) + eps m2) + x_{R+1}^2/4.
inline double f_value(const MassVector& x, double eps, double m2) {
  const int R = x.R();
  double tail = 0.0, s = 0.0;  // tail = sum_{j>i, j<=R} x_j/(2j)
  for (int i = R; i >= 2; --i) {
    s += (i - 1) * x[i] * (tail + x[i] / (4.0 * i) + eps * m2);
    tail += x[i] / (2.0 * i);
  }
  return s + x[R + 1] * x[R + 1] / 4.0;
}

// f as a quadratic A y^2 + B y + C in the coordinate j (others held fixed).
struct Quadratic {
  double A = 0, B = 0, C = 0;
};

inline Quadratic f_along(const MassVector& x, int j, double eps, double m2) {
  const int R = x.R();
  detail::require(j >= 2 && j <= R + 1, "f_along: class out of range");
  MassVector y = x;
  y[j] = 0.0;
  Quadratic q;
  q.C = f_value(y, eps, m2);
  if (j == R + 1) {
    q.A = 0.25;
    return q;
  }
  double tail = 0.0;
  for (int l = j + 1; l <= R; ++l) tail += x[l] / (2.0 * l);
  q.A = (j - 1) / (4.0 * j);
  q.B = (j - 1) * (tail + eps * m2);
  for (int i = 2; i < j; ++i) q.B += (i - 1) * x[i] / (2.0 * j);
  return q;
}

// Smallest y >= 0 with A y^2 + B y + C >= t.
inline double min_feasible(const Quadratic& q, double t) {
  const double c = q.C - t;
  if (c >= 0.0) return 0.0;
  if (q.A == 0.0) return q.B > 0.0 ? -c / q.B : std::numeric_limits<double>::infinity();
  return -2.0 * c / (q.B + std::sqrt(q.B * q.B - 4.0 * q.A * c));
}

inline MassVector push_left(const MassVector& x, int i, const UVector& u) {
  detail::require(x.R() == u.R(), "push_left: length mismatch");
  if (i < 2 || i > x.R()) throw DomainError("push_left: need 2 <= i <= R");
  if (u[i + 1] == 0.0) throw DomainError("push_left: singular direction (u_{i+1} = 0)");
  MassVector y = x;
  y[i] = 0.0;
  y[i + 1] += u[i] * x[i] / u[i + 1];
  return y;
}

inline MassVector push_right(const MassVector& x, int j, const UVector& u) {
  detail::require(x.R() == u.R(), "push_right: length mismatch");
  if (j < 3 || j > x.R() + 1) throw DomainError("push_right: need 3 <= j <= R+1");
  if (u[j - 1] == 0.0) throw DomainError("push_right: singular direction (u_{j-1} = 0)");
  MassVector y = x;
  y[j] = 0.0;
  y[j - 1] += u[j] * x[j] / u[j - 1];
  return y;
}

// i^2 u_i^2 >= (i+1)(i-1) u_{i+1}^2.
inline bool technical_inequality(int i, double n, double p) {
  if (i < 2) throw DomainError("technical_inequality: i must be >= 2");
  const double a = u_entry(i, n, p), b = u_entry(i + 1, n, p);
  return double(i) * i * a * a >= (i + 1.0) * (i - 1.0) * b * b;
}

struct AlphaSolution {
  double alpha = 0, value = 0;
};

// Positive root of (k-1)/(4k) a^2 + eps (k-1) m2 a - t = 0; value = alpha u_k.
inline AlphaSolution closed_form_alpha(int k, double t, double eps, double m2, double u_k = 0.0) {
  if (k < 2) throw DomainError("closed_form_alpha: k must be >= 2");
  if (t <= 0.0) return {};
  const double a = (k - 1.0) / (4.0 * k), b = eps * (k - 1.0) * m2;
  const double alpha = 2.0 * t / (b + std::sqrt(b * b + 4.0 * a * t));
  return {alpha, alpha * u_k};
}

struct GridResult {
  double best = -std::numeric_limits<double>::infinity();
  MassVector x;
  int argmax = 0;
};

// Two coordinates active at a time: x_i on `points` grid values in
// [0, 2 m2], x_j the smallest value keeping f >= t.  Includes every single
// coordinate (x_i = 0).
inline GridResult grid_cross_check(const UVector& u, double t, double eps, double m2,
                                   int points = 200) {
  const int R = u.R();
  GridResult g;
  g.x = MassVector(R);
  for (int i = 2; i <= R + 1; ++i)
    for (int j = 2; j <= R + 1; ++j) {
      if (i == j) continue;
      for (int s = 0; s < points; ++s) {
        MassVector x(R);
        x[i] = 2.0 * m2 * s / (points - 1);
        x[j] = min_feasible(f_along(x, j, eps, m2), t);
        if (!std::isfinite(x[j])) continue;
        const double v = inner(x, u);
        if (v > g.best) {
          g.best = v;
          g.x = x;
        }
      }
    }
  g.argmax = g.x.argmax();
  return g;
}

struct DiscreteSolution {
  MassVector x_star;
  double value = 0;
  int k = 0;
  int R = 0;
  double t = 0, m2 = 0;
  double grid_best = 0;
  int grid_argmax = 0;
  double gap = 0;  // grid_best - value
  int push_checks = 0;
  int push_violations = 0;
};

namespace detail {

// Push random test vectors toward class k and count f decreases.
inline void verify_pushes(DiscreteSolution& s, const UVector& u, double eps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mass(0.0, 2.0 * s.m2);
  const int R = s.R, k = s.k;
  for (int trial = 0; trial < 16; ++trial) {
    MassVector x(R);
    for (int i = 2; i <= R; ++i) x[i] = mass(rng);
    for (int i = 2; i < k; ++i) {
      const MassVector y = push_left(x, i, u);
      ++s.push_checks;
      if (f_value(y, eps, s.m2) < f_value(x, eps, s.m2) * (1 - 1e-12)) ++s.push_violations;
      x = y;
    }
    for (int j = R; j > k; --j) {
      const MassVector y = push_right(x, j, u);
      ++s.push_checks;
      if (f_value(y, eps, s.m2) < f_value(x, eps, s.m2) * (1 - 1e-12)) ++s.push_violations;
      x = y;
    }
  }
}

}  // namespace detail

inline DiscreteSolution solve_discrete(double n, double p, double delta, double eps, int R = 0,
                                       int grid_points = 200) {
  if (!(eps > 0.0)) throw DomainError("solve_discrete: eps must be positive");
  const RegimeDescriptor reg = regime_classify(n, p);
  if (reg.label != RegimeLabel::SparseK) throw DomainError("solve_discrete: regime is not SPARSE_K");
  DiscreteSolution s;
  s.k = static_cast<int>(std::min<long long>(*reg.k, 1 << 20));
  s.R = R > 0 ? R : default_R(eps);
  if (s.k > s.R) throw PreconditionError("solve_discrete: R is below the regime class k");
  const UVector u = u_vector(n, p, s.R);
  const double E = expected_induced_c4(n, p);
  s.m2 = plant_size(2, E, delta, eps);
  s.t = (delta - eps) * E;
  const AlphaSolution a = closed_form_alpha(s.k, s.t, eps, s.m2, u[s.k]);
  s.x_star = MassVector::unit(s.R, s.k, a.alpha);
  s.value = a.value;
  detail::verify_pushes(s, u, eps, 0x9e3779b97f4a7c15ULL);
  if (s.t > 0.0) {
    const GridResult g = grid_cross_check(u, s.t, eps, s.m2, grid_points);
    s.grid_best = g.best;
    s.grid_argmax = g.argmax;
  } else {
    s.grid_best = 0.0;
    s.grid_argmax = s.k;
  }
  s.gap = s.grid_best - s.value;
  return s;
}

}  // namespace c4tail
