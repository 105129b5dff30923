// Copyright 2026 The secgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SECGAME_RNG_H_
#define SECGAME_RNG_H_

#include <cstdint>
#include <random>

#include "secgame/check.h"

namespace secgame {

// SplitMix64 finalizer. Used to derive decorrelated stream seeds from a
// master seed and a stream tag, so that independent components (environment,
// each policy, evaluation, pool sampling) never share a generator.
inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(seed ^ SplitMix64(stream * 0x9E3779B97F4A7C15ULL + 1));
}

// Stream tags for per-run rng derivation.
namespace rng_stream {
inline constexpr std::uint64_t kEnvironment = 1;
inline constexpr std::uint64_t kAttackerPolicy = 2;
inline constexpr std::uint64_t kDefenderPolicy = 3;
inline constexpr std::uint64_t kEvaluation = 4;
inline constexpr std::uint64_t kPool = 5;
inline constexpr std::uint64_t kPermutation = 6;
inline constexpr std::uint64_t kAttackerInit = 7;
inline constexpr std::uint64_t kDefenderInit = 8;
}  // namespace rng_stream

// Deterministic random source. The engine (std::mt19937_64) is fully
// specified by the standard and the variate mappings below avoid
// std::*_distribution, whose output is implementation-defined; identical
// seeds therefore reproduce identical draws on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(SplitMix64(seed)) {}

  std::uint64_t NextUint64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(NextUint64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Rejection sampling, bias-free.
  int UniformInt(int n) {
    SECGAME_CHECK_MSG(n > 0, "UniformInt requires n > 0");
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    std::uint64_t x, r;
    do {
      x = NextUint64();
      r = x % bound;
    } while (x - r > static_cast<std::uint64_t>(-bound));
    return static_cast<int>(r);
  }

  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace secgame

#endif  // SECGAME_RNG_H_
