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

#include <array>
#include <cstdint>

namespace c4tail {

// Philox4x32-10 counter-based generator (Salmon et al. 2011 constants).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter block(Counter ctr, Key key) {
    for (int r = 0; r < 10; ++r) {
      if (r > 0) {
        key[0] += kW0;
        key[1] += kW1;
      }
      ctr = round(ctr, key);
    }
    return ctr;
  }

  static constexpr Key key_from_seed(std::uint64_t seed) {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  }

 private:
  static constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;

  static constexpr Counter round(const Counter& c, const Key& k) {
    const std::uint64_t p0 = std::uint64_t{kM0} * c[0];
    const std::uint64_t p1 = std::uint64_t{kM1} * c[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
  }
};

// Random words addressed by (stream, trial, index): word `index` of the
// sequence for a given trial never depends on how trials are scheduled.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream)
      : key_(Philox4x32::key_from_seed(seed)),
        trial_lo_(static_cast<std::uint32_t>(trial)),
        trial_hi_(static_cast<std::uint32_t>(trial >> 32)),
        stream_(stream) {}

  // index < 2^34.
  std::uint32_t word(std::uint64_t index) {
    const std::uint64_t b = index >> 2;
    if (b != cached_block_) {
      cache_ = Philox4x32::block({static_cast<std::uint32_t>(b), trial_lo_, trial_hi_, stream_}, key_);
      cached_block_ = b;
    }
    return cache_[index & 3];
  }

  // P(true) = floor(p 2^32) / 2^32; exact at p = 0 and p = 1.
  bool bernoulli(std::uint64_t index, double p) { return word(index) < threshold(p); }

  double uniform(std::uint64_t index) {
    return (static_cast<double>(word(index)) + 0.5) * 0x1p-32;
  }

  static std::uint64_t threshold(double p) {
    if (!(p > 0.0)) return 0;
    if (p >= 1.0) return std::uint64_t{1} << 32;
    return static_cast<std::uint64_t>(p * 0x1p32);
  }

 private:
  Philox4x32::Key key_;
  std::uint32_t trial_lo_, trial_hi_, stream_;
  std::uint64_t cached_block_ = ~std::uint64_t{0};
  Philox4x32::Counter cache_{};
};

}  // namespace c4tail
