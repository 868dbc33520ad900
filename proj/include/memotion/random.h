/* Copyright 2026 The Memotion Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef MEMOTION_RANDOM_H_
#define MEMOTION_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace memotion {

// Seeded generator whose draws are identical on every standard library.
// std::*_distribution is implementation-defined, so the bounded draws here
// are computed directly from the raw 64-bit engine output.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform integer in [0, bound). bound must be > 0.
  uint64_t Below(uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Fisher-Yates shuffle.
  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Derives an independent child seed (splitmix64 finalizer over seed ^ salt).
uint64_t DeriveSeed(uint64_t seed, uint64_t salt);

// 64-bit FNV-1a.
uint64_t Fnv1a64(const void* data, size_t size, uint64_t hash = 0xcbf29ce484222325ULL);

}  // namespace memotion

#endif  // MEMOTION_RANDOM_H_
