/*
 * Copyright (C) 2025 The redmule-sim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>

#include "redmule/golden.hpp"

namespace redmule {

/// splitmix64: tiny, stdlib-independent generator so that a recorded seed
/// reproduces byte-identical runs on any platform.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t below(uint64_t bound) { return next() % bound; }
};

enum class ValueMix {
  /// Finite values only: normals across the exponent range plus
  /// subnormals and signed zeros. Default for performance runs.
  finite,
  /// Adds signed infinities to the mix (for bit-exactness stress).
  finite_and_inf,
};

F16 random_f16(SplitMix64& rng, ValueMix mix);
MatF16 random_mat(size_t rows, size_t cols, SplitMix64& rng, ValueMix mix);

}  // namespace redmule
