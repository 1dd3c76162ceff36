// Copyright 2026 The LID Authors.
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
#include <cstdint>
#include <limits>
#include <vector>

// Counter-based random streams. Every random decision in training is drawn
// from a stream addressed by (master seed, seed index, tree index, node id),
// so the output of training never depends on which worker ran what.
//
//   seed_key(i)      = derive(master_seed, i)
//   tree_key(i, t)   = derive(seed_key(i), t)
//   bootstrap stream = CounterRng(derive(tree_key, 0))
//   node k stream    = CounterRng(derive(tree_key, k + 1))
//
// derive(parent, index) = mix(parent ^ mix(index + golden)), mix = SplitMix64
// finalizer. The n-th draw of CounterRng(key) is mix(key + n * golden).

namespace lid::ml {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_stream(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(parent ^ mix64(index + kGolden));
}

/// Satisfies UniformRandomBitGenerator. Stateless apart from a draw counter.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGolden); }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniform integer in [0, bound). Lemire's multiply-shift with rejection;
/// used instead of std::uniform_int_distribution, whose algorithm differs
/// between standard libraries.
inline std::uint64_t uniform_below(CounterRng& rng, std::uint64_t bound) noexcept {
  if (bound <= 1) return 0;
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
    if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64);
  }
}

/// `k` distinct indices from [0, n), sorted ascending (partial Fisher-Yates).
inline std::vector<int> sample_without_replacement(CounterRng& rng, int n, int k) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace lid::ml
