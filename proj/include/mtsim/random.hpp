// mtsim/random.hpp

// Copyright 2026  The mtsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MTSIM_RANDOM_HPP_
#define MTSIM_RANDOM_HPP_

#include <cstdint>
#include <span>
#include <string_view>

namespace mtsim {

/// Counter-based random stream. Draw n of a stream keyed by K is a pure
/// function of (K, n), so sub-streams derived from (seed, index) give the
/// same values no matter which thread or in which order they are consumed.
///
/// Everything here is defined in terms of 64-bit integer mixing, so results
/// are identical across compilers and standard libraries (unlike the
/// <random> distributions).
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : key_(Mix(seed ^ kSeedSalt)) {}

  /// Independent child stream; its draws do not advance this stream.
  RandomStream Substream(uint64_t index) const {
    return RandomStream(Key{Mix(key_ ^ Mix(index + kIndexSalt))});
  }
  RandomStream Substream(std::string_view name) const {
    return Substream(HashName(name));
  }

  uint64_t key() const noexcept { return key_; }
  uint64_t draws() const noexcept { return counter_; }

  uint64_t NextU64() { return Mix(key_ ^ Mix(counter_++ * kGolden + kGolden)); }

  /// Uniform double in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi]. Returns lo when hi <= lo.
  double Uniform(double lo, double hi) {
    if (!(hi > lo)) return lo;
    return lo + (hi - lo) * Uniform();
  }

  /// Unbiased integer in [0, n); n must be > 0.
  uint64_t Index(uint64_t n);

  /// Index drawn proportionally to non-negative weights; at least one weight
  /// must be positive.
  size_t Weighted(std::span<const double> weights);

  static uint64_t Mix(uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // FNV-1a, so named sub-streams are stable across platforms.
  static uint64_t HashName(std::string_view name) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : name) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  struct Key {
    uint64_t value;
  };
  explicit RandomStream(Key k) : key_(k.value) {}

  static constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr uint64_t kSeedSalt = 0x6d7473696d2d7331ULL;
  static constexpr uint64_t kIndexSalt = 0x2545f4914f6cdd1dULL;

  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace mtsim

#endif  // MTSIM_RANDOM_HPP_
