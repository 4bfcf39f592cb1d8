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
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "c4tail/errors.hpp"

namespace c4tail {

// Edge mass per degree class: entries x_1, ..., x_R and x_{>R}, addressed
// with 1-based class indices 1..R+1 (class R+1 is the "> R" bucket).
class MassVector {
 public:
  MassVector() = default;
  explicit MassVector(int R) : x_(checked(R) + 1, 0.0) {}
  MassVector(int R, std::span<const double> entries) : MassVector(R) {
    detail::require(entries.size() == x_.size(), "MassVector: wrong length");
    std::copy(entries.begin(), entries.end(), x_.begin());
  }

  static MassVector unit(int R, int cls, double alpha = 1.0) {
    MassVector x(R);
    x[cls] = alpha;
    return x;
  }

  int R() const { return static_cast<int>(x_.size()) - 1; }
  int size() const { return static_cast<int>(x_.size()); }

  double& operator[](int cls) { return x_[static_cast<std::size_t>(cls - 1)]; }
  double operator[](int cls) const { return x_[static_cast<std::size_t>(cls - 1)]; }

  double over_R() const { return x_.back(); }
  double sum() const { return std::accumulate(x_.begin(), x_.end(), 0.0); }

  // Class holding the largest mass (smallest class on ties).
  int argmax() const {
    return static_cast<int>(std::max_element(x_.begin(), x_.end()) - x_.begin()) + 1;
  }

  std::span<const double> values() const { return x_; }

  bool operator==(const MassVector&) const = default;

 private:
  static std::size_t checked(int R) {
    detail::require(R >= 1, "MassVector: R must be positive");
    return static_cast<std::size_t>(R);
  }
  std::vector<double> x_;
};

}  // namespace c4tail
