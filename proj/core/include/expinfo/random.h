// Copyright 2026 The expinfo Authors.
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

#ifndef EXPINFO_RANDOM_H_
#define EXPINFO_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>

namespace expinfo {

// SplitMix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed for the `ordinal`-th independent sub-stream of `master`. Results
// depend only on (master, ordinal), never on scheduling.
constexpr std::uint64_t DeriveSeed(std::uint64_t master,
                                   std::uint64_t ordinal) {
  return Mix64(Mix64(master) ^ Mix64(ordinal + 0x632BE59BD9B4E019ull));
}

// mt19937_64 with a platform-independent uniform draw (the standard
// distributions are implementation-defined, which would break
// bit-reproducibility across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Index drawn proportionally to `weights` (need not be normalized; at
  // least one weight must be positive).
  std::size_t Categorical(std::span<const double> weights);

  std::uint64_t NextU64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

inline std::size_t Rng::Categorical(std::span<const double> weights) {
  double total = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) {
      total += weights[i];
      last_positive = i;
    }
  }
  const double u = Uniform() * total;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cumulative += weights[i];
    if (u < cumulative) return i;
  }
  return last_positive;
}

}  // namespace expinfo

#endif  // EXPINFO_RANDOM_H_
