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

#include "redmule/randmat.hpp"

namespace redmule {

F16 random_f16(SplitMix64& rng, ValueMix mix) {
  uint64_t r = rng.next();
  uint16_t sign = static_cast<uint16_t>((r & 1) << 15);
  uint64_t cls = (r >> 1) % 100;
  uint16_t frac = static_cast<uint16_t>((r >> 16) & 0x3ff);

  if (cls < 74) {
    // Normal with a moderate exponent so products rarely saturate.
    uint16_t e = static_cast<uint16_t>(8 + ((r >> 32) % 15));  // biased 8..22
    return F16::from_bits(static_cast<uint16_t>(sign | (e << 10) | frac));
  }
  if (cls < 82) {  // full-range normal, including overflow-prone ones
    uint16_t e = static_cast<uint16_t>(1 + ((r >> 32) % 30));
    return F16::from_bits(static_cast<uint16_t>(sign | (e << 10) | frac));
  }
  if (cls < 90) {  // subnormal (frac == 0 degenerates to a signed zero)
    return F16::from_bits(static_cast<uint16_t>(sign | frac));
  }
  if (cls < 98) {  // signed zero
    return F16::from_bits(sign);
  }
  if (mix == ValueMix::finite_and_inf) {
    return F16::from_bits(static_cast<uint16_t>(sign | 0x7c00));
  }
  return F16::from_bits(static_cast<uint16_t>(sign | (10u << 10) | frac));
}

MatF16 random_mat(size_t rows, size_t cols, SplitMix64& rng, ValueMix mix) {
  MatF16 m(rows, cols);
  for (auto& v : m.data) v = random_f16(rng, mix);
  return m;
}

}  // namespace redmule
