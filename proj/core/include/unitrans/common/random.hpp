// Copyright 2026 The unitrans Authors
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

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace unitrans {

/// 64-bit finalizer from SplitMix64; a bijection on uint64.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a over bytes, used for vocabulary hashes and seed derivation.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

/// Seed for a named sub-purpose ("init", "dropout", "corpus/lexicon", ...).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose);

/// Stateless uniform in [0, 1) keyed on (seed, step, stream, index).
/// Used for dropout masks so that a mask never depends on evaluation order.
double counter_uniform(std::uint64_t seed, std::uint64_t step, std::uint64_t stream,
                       std::uint64_t index);

/// counter_uniform split in two: the key for (seed, step, stream) and the
/// per-index draw. counter_uniform_at(counter_key(s, t, r), i) equals
/// counter_uniform(s, t, r, i).
std::uint64_t counter_key(std::uint64_t seed, std::uint64_t step, std::uint64_t stream);
inline double counter_uniform_at(std::uint64_t key, std::uint64_t index) {
  return static_cast<double>(mix64(key ^ index) >> 11) * 0x1.0p-53;
}

/// 16 uniform bits per index; four consecutive indices share one hash.
inline std::uint32_t counter_bits16(std::uint64_t key, std::uint64_t index) {
  return static_cast<std::uint32_t>((mix64(key ^ (index >> 2)) >> (16 * (index & 3))) & 0xffffu);
}

/// Keep test for dropout rate p on 16-bit draws: drops with probability
/// round(p * 65536) / 65536.
struct KeepMask {
  std::uint64_t key;
  std::uint32_t threshold;
  KeepMask(std::uint64_t k, double p)
      : key(k), threshold(static_cast<std::uint32_t>(p * 65536.0 + 0.5)) {}
  bool operator()(std::uint64_t index) const { return counter_bits16(key, index) >= threshold; }
};

/// Seeded generator. Distributions are implemented here rather than taken
/// from <random> so that streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n); n must be positive.
  std::size_t below(std::size_t n);
  /// Standard normal (Box-Muller, no caching).
  double normal();
  /// Poisson(lambda) by inversion; lambda small.
  std::size_t poisson(double lambda);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace unitrans
