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
#include <string>
#include <string_view>

namespace redmule {

/// IEEE 754 binary16 scalar carried as its raw 16-bit pattern
/// (1 sign, 5 exponent, 10 mantissa bits). Every pattern is valid,
/// including subnormals, signed zeros, infinities and NaNs.
///
/// Equality is total bit-pattern identity, not IEEE comparison: two NaNs
/// with the same pattern compare equal, +0 != -0. This is deliberate — the
/// simulator's correctness claims are all stated in terms of bit identity.
struct F16 {
  uint16_t bits = 0;

  static constexpr F16 from_bits(uint16_t b) { return F16{b}; }

  constexpr bool sign() const { return (bits >> 15) != 0; }
  constexpr uint16_t biased_exp() const { return (bits >> 10) & 0x1f; }
  constexpr uint16_t frac() const { return bits & 0x3ff; }

  constexpr bool is_nan() const { return biased_exp() == 0x1f && frac() != 0; }
  constexpr bool is_inf() const { return biased_exp() == 0x1f && frac() == 0; }
  constexpr bool is_zero() const { return (bits & 0x7fff) == 0; }
  constexpr bool is_subnormal() const { return biased_exp() == 0 && frac() != 0; }
  constexpr bool is_finite() const { return biased_exp() != 0x1f; }

  friend constexpr bool operator==(F16 a, F16 b) { return a.bits == b.bits; }
  friend constexpr bool operator!=(F16 a, F16 b) { return a.bits != b.bits; }
};

inline constexpr F16 kPosZero = F16::from_bits(0x0000);
inline constexpr F16 kNegZero = F16::from_bits(0x8000);
inline constexpr F16 kOne = F16::from_bits(0x3c00);
inline constexpr F16 kPosInf = F16::from_bits(0x7c00);
inline constexpr F16 kNegInf = F16::from_bits(0xfc00);
inline constexpr F16 kMaxFinite = F16::from_bits(0x7bff);
// Single canonical quiet NaN emitted by all operations.
inline constexpr F16 kQuietNaN = F16::from_bits(0x7e00);

enum class FpClass : uint8_t { zero, subnormal, normal, infinite, nan };

/// Class and sign of a value. NaN sign is the raw sign bit.
struct ClassifiedF16 {
  FpClass cls;
  bool negative;
};

ClassifiedF16 fp_class(F16 a);

/// Only round-to-nearest-even is implemented; configuration parsing rejects
/// anything else before a simulation is built.
enum class RoundingMode : uint8_t { nearest_even };

/// Fused multiply-add: RNE(a*b + c) with one rounding of the exact
/// product-sum. Subnormals are produced and consumed exactly (no flush to
/// zero). NaN inputs and invalid operations (inf*0, inf-inf) yield the
/// canonical quiet NaN. Exact-zero results follow the IEEE 754-2019
/// addition sign rules under RNE.
F16 fma(F16 a, F16 b, F16 c);

/// Parses a decimal literal ("1.0", "-3.25e-2", ...), "inf"/"-inf" or
/// "nan", and returns its RNE-correct binary16 encoding. The conversion is
/// exact for any number of digits (big-integer long division, no
/// double-rounding through a wider binary type).
/// Throws Error(Errc::malformed_literal) on anything else.
F16 from_decimal(std::string_view text);

/// Accepts either a decimal literal (via from_decimal) or a raw bit
/// pattern written as 0xHHHH.
F16 from_literal(std::string_view text);

/// Exact decimal expansion of a finite value (every binary16 value is a
/// finite decimal); "inf"/"-inf"/"nan" for the rest. Always carries at
/// least one fractional digit, e.g. "2.0", "-0.0", "0.0999755859375".
std::string to_exact_decimal(F16 a);

/// Exact widening to double (used only for display and reports).
double to_double(F16 a);

}  // namespace redmule
