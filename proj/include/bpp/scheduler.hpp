// Copyright 2026 The bpp Authors.
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

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "bpp/population.hpp"

namespace bpp {

/// The generator behind every random stream in a run. 64-bit Mersenne
/// twister: 19937-bit state, seeded from one 64-bit integer.
using Rng = std::mt19937_64;

/// Unordered pair, stored with u < v.
struct ExchangePair {
  NodeId u = 0;
  NodeId v = 0;
  friend bool operator==(const ExchangePair&, const ExchangePair&) = default;
};

/// Streams that must not perturb each other within one run.
enum class Stream : std::uint64_t { Scheduler = 0, Adversary = 1, NodeCoins = 2 };

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of trial `trial_index` under `master_seed`.
constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) noexcept {
  return mix64(master_seed ^ mix64(trial_index + 0x51ed270b27f1a3c5ULL));
}

/// Seed of an independent stream derived from a run seed.
constexpr std::uint64_t stream_seed(std::uint64_t run_seed, Stream s) noexcept {
  return mix64(run_seed + 0x2545f4914f6cdd1dULL * (static_cast<std::uint64_t>(s) + 1));
}

/// Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with
/// rejection, so the result is exactly uniform and platform independent.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  std::uint64_t x = rng();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = rng();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Draws one of the C(n,2) unordered pairs uniformly. Throws ConfigError
/// when n < 2.
ExchangePair next_pair(Rng& rng, std::uint32_t n);

/// Unchecked variant for the engine's inner loop; requires n >= 2.
inline ExchangePair next_pair_unchecked(Rng& rng, std::uint32_t n) {
  auto u = static_cast<NodeId>(uniform_below(rng, n));
  auto v = static_cast<NodeId>(uniform_below(rng, n - 1));
  if (v >= u) {
    ++v;
    return {u, v};
  }
  return {v, u};
}

/// Index of a canonical pair in [0, C(n,2)), row-major over u < v.
constexpr std::uint64_t pair_index(ExchangePair p, std::uint32_t n) noexcept {
  const std::uint64_t u = p.u;
  return u * n - u * (u + 1) / 2 + (p.v - u - 1);
}

/// Decimal or 0x-prefixed hexadecimal 64-bit seed.
std::optional<std::uint64_t> parse_seed(std::string_view text) noexcept;

}  // namespace bpp
