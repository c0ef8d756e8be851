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

// Test-only reference model for binary16 arithmetic, deliberately written
// on a different algorithmic route than the library: finite values are
// taken to exact signed fixed point (units of 2^-48, which an __int128
// holds with room to spare) and the product-sum is computed and rounded
// exactly from the full-width integer. The library's guard/round/sticky
// pipeline is checked against this bit for bit.

#pragma once

#include <cstdint>

#include "redmule/fp16.hpp"

namespace redmule::testref {

// Exact value * 2^24 of a finite F16 (|v| <= 65504 * 2^24 < 2^41).
int64_t fixed24(F16 a);

// Reference RNE(a*b + c) with a single rounding, bit-exact by construction.
F16 ref_fma(F16 a, F16 b, F16 c);

// Reference rounding of an exact value mag48 * 2^-48 (mag48 >= 0).
uint16_t ref_round48(unsigned __int128 mag48);

}  // namespace redmule::testref
