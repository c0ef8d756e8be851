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

#include "redmule/fp16.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <vector>

#include "redmule/error.hpp"

namespace redmule {
namespace {

// Unpacked finite nonzero value: magnitude = sig * 2^(exp - 10) with
// sig normalized into [2^10, 2^11).
struct Unpacked {
  bool sign;
  int exp;
  uint32_t sig;
};

Unpacked unpack_nonzero(F16 a) {
  Unpacked u;
  u.sign = a.sign();
  if (a.biased_exp() == 0) {
    // Subnormal: frac * 2^-24. Normalize so the rounding path below is
    // uniform.
    u.exp = -14;
    u.sig = a.frac();
    while ((u.sig & 0x400) == 0) {
      u.sig <<= 1;
      u.exp -= 1;
    }
  } else {
    u.exp = static_cast<int>(a.biased_exp()) - 15;
    u.sig = 0x400u | a.frac();
  }
  return u;
}

constexpr F16 make_inf(bool sign) { return F16::from_bits(sign ? 0xfc00 : 0x7c00); }
constexpr F16 make_zero(bool sign) { return F16::from_bits(sign ? 0x8000 : 0x0000); }

uint64_t shift_right_jam(uint64_t x, int dist) {
  if (dist >= 64) return x != 0 ? 1 : 0;
  uint64_t kept = x >> dist;
  uint64_t lost = x & ((uint64_t{1} << dist) - 1);
  return kept | (lost != 0 ? 1 : 0);
}

// Round magnitude mag * 2^(frame_exp) to binary16 under RNE and pack with
// the given sign. mag > 0. Handles normals, subnormals, overflow to inf.
F16 round_pack(bool sign, uint64_t mag, int frame_exp) {
  int msb = 63 - std::countl_zero(mag);
  int e = frame_exp + msb;  // unbiased exponent of the leading bit

  uint64_t q;
  if (e >= -14) {
    // Normal range: keep 11 significand bits.
    int shift = msb - 10;
    uint64_t rem = 0, half = 0;
    if (shift <= 0) {
      q = mag << -shift;
    } else {
      q = mag >> shift;
      rem = mag & ((uint64_t{1} << shift) - 1);
      half = uint64_t{1} << (shift - 1);
    }
    if (rem > half || (rem == half && (q & 1))) q += 1;
    if (q == 0x800) {
      q = 0x400;
      e += 1;
    }
    if (e > 15) return make_inf(sign);
    uint16_t bits = static_cast<uint16_t>(((e + 15) << 10) | (q & 0x3ff));
    return F16::from_bits(static_cast<uint16_t>((sign ? 0x8000 : 0) | bits));
  }

  // Subnormal range: round onto the fixed 2^-24 grid.
  int shift = -24 - frame_exp;
  if (shift <= 0) {
    q = mag << -shift;  // exact, q < 2^10 since the value is below 2^-14
  } else if (shift >= 64) {
    q = 0;  // strictly below half of the smallest subnormal
  } else {
    q = mag >> shift;
    uint64_t rem = mag & ((uint64_t{1} << shift) - 1);
    uint64_t half = uint64_t{1} << (shift - 1);
    if (rem > half || (rem == half && (q & 1))) q += 1;
  }
  // q == 0x400 lands exactly on the smallest normal, whose encoding is the
  // natural continuation of the subnormal field.
  return F16::from_bits(static_cast<uint16_t>((sign ? 0x8000 : 0) | q));
}

// Guard bits kept below the 22-bit exact product during alignment.
constexpr int kGuard = 13;

}  // namespace

ClassifiedF16 fp_class(F16 a) {
  FpClass c;
  if (a.is_nan()) {
    c = FpClass::nan;
  } else if (a.is_inf()) {
    c = FpClass::infinite;
  } else if (a.is_zero()) {
    c = FpClass::zero;
  } else if (a.is_subnormal()) {
    c = FpClass::subnormal;
  } else {
    c = FpClass::normal;
  }
  return ClassifiedF16{c, a.sign()};
}

F16 fma(F16 a, F16 b, F16 c) {
  if (a.is_nan() || b.is_nan() || c.is_nan()) return kQuietNaN;

  const bool ps = a.sign() != b.sign();
  if (a.is_inf() || b.is_inf()) {
    if ((a.is_inf() && b.is_zero()) || (b.is_inf() && a.is_zero())) return kQuietNaN;
    if (c.is_inf() && c.sign() != ps) return kQuietNaN;
    return make_inf(ps);
  }
  if (c.is_inf()) return c;

  if (a.is_zero() || b.is_zero()) {
    if (!c.is_zero()) return c;  // exact: c needs no rounding
    // Exact zero sum of two signed zeros: same sign keeps it, otherwise +0.
    return ps == c.sign() ? c : kPosZero;
  }

  const Unpacked ua = unpack_nonzero(a);
  const Unpacked ub = unpack_nonzero(b);

  // Exact 22-bit product, normalized so bit 21 is set.
  uint32_t psig = ua.sig * ub.sig;
  int pexp = ua.exp + ub.exp;  // product = psig * 2^(pexp - 20)
  if ((psig & (1u << 21)) == 0) {
    psig <<= 1;
    pexp -= 1;
  }

  const int frame_exp = pexp - 20 - kGuard;
  uint64_t acc = static_cast<uint64_t>(psig) << kGuard;

  if (c.is_zero()) return round_pack(ps, acc, frame_exp);

  const Unpacked uc = unpack_nonzero(c);
  const int shift = (uc.exp - 10) - frame_exp;

  if (shift > 50) {
    // |c| exceeds the product by far more than half an ulp of c: the sum
    // rounds to c itself.
    return c;
  }

  uint64_t csig = static_cast<uint64_t>(uc.sig);
  // The addend is exact for shift >= 0; a right-shifted addend keeps a
  // sticky bit far below the rounding position.
  csig = shift >= 0 ? csig << shift : shift_right_jam(csig, -shift);

  bool rsign;
  uint64_t mag;
  if (ps == uc.sign) {
    rsign = ps;
    mag = acc + csig;
  } else if (acc >= csig) {
    rsign = ps;
    mag = acc - csig;
  } else {
    rsign = uc.sign;
    mag = csig - acc;
  }
  if (mag == 0) return kPosZero;  // exact cancellation rounds to +0 under RNE

  return round_pack(rsign, mag, frame_exp);
}

namespace {

// Minimal unsigned big integer for the exact decimal parser. Only the
// operations long division needs: shift left by one, compare, subtract,
// multiply by a small constant.
struct BigUint {
  std::vector<uint64_t> w;  // little-endian limbs

  static BigUint from_u64(uint64_t v) {
    BigUint r;
    if (v) r.w.push_back(v);
    return r;
  }

  bool is_zero() const { return w.empty(); }

  void trim() {
    while (!w.empty() && w.back() == 0) w.pop_back();
  }

  void shl1() {
    uint64_t carry = 0;
    for (auto& limb : w) {
      uint64_t next = limb >> 63;
      limb = (limb << 1) | carry;
      carry = next;
    }
    if (carry) w.push_back(carry);
  }

  void mul_small(uint64_t m) {
    unsigned __int128 carry = 0;
    for (auto& limb : w) {
      unsigned __int128 t = static_cast<unsigned __int128>(limb) * m + carry;
      limb = static_cast<uint64_t>(t);
      carry = t >> 64;
    }
    if (carry) w.push_back(static_cast<uint64_t>(carry));
  }

  void add_small(uint64_t v) {
    size_t i = 0;
    while (v) {
      if (i == w.size()) {
        w.push_back(v);
        return;
      }
      uint64_t s = w[i] + v;
      v = s < w[i] ? 1 : 0;
      w[i] = s;
      ++i;
    }
  }

  // -1, 0, +1
  int cmp(const BigUint& o) const {
    if (w.size() != o.w.size()) return w.size() < o.w.size() ? -1 : 1;
    for (size_t i = w.size(); i-- > 0;) {
      if (w[i] != o.w[i]) return w[i] < o.w[i] ? -1 : 1;
    }
    return 0;
  }

  // this -= o, requires this >= o
  void sub(const BigUint& o) {
    uint64_t borrow = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      unsigned __int128 rhs =
          static_cast<unsigned __int128>(i < o.w.size() ? o.w[i] : 0) + borrow;
      borrow = static_cast<unsigned __int128>(w[i]) < rhs ? 1 : 0;
      w[i] -= static_cast<uint64_t>(rhs);
    }
    trim();
  }
};

struct ParsedDecimal {
  bool negative = false;
  BigUint digits;       // significant digits as an integer
  bool sticky = false;  // nonzero digits dropped beyond the kept window
  long dec_exp = 0;     // value = digits * 10^dec_exp (+ sticky fraction of an ulp)
  int ndigits = 0;      // decimal digit count of `digits`
  bool is_zero = false;
};

constexpr int kMaxSigDigits = 40;

bool parse_decimal_text(std::string_view text, ParsedDecimal& out) {
  size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    out.negative = text[i] == '-';
    ++i;
  }
  bool any_digit = false;
  bool seen_dot = false;
  long frac_digits = 0;
  int kept = 0;
  bool leading = true;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '.') {
      if (seen_dot) return false;
      seen_dot = true;
      continue;
    }
    if (ch < '0' || ch > '9') break;
    any_digit = true;
    if (seen_dot) ++frac_digits;
    if (leading && ch == '0') continue;  // strip leading zeros
    leading = false;
    if (kept < kMaxSigDigits) {
      out.digits.mul_small(10);
      out.digits.add_small(static_cast<uint64_t>(ch - '0'));
      ++kept;
    } else {
      if (ch != '0') out.sticky = true;
      if (!seen_dot) ++out.dec_exp;  // dropped integer digit still scales
    }
  }
  if (!any_digit) return false;
  long exp_val = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_neg = text[i] == '-';
      ++i;
    }
    if (i >= text.size()) return false;
    bool any = false;
    for (; i < text.size(); ++i) {
      char ch = text[i];
      if (ch < '0' || ch > '9') return false;
      any = true;
      if (exp_val < 100000) exp_val = exp_val * 10 + (ch - '0');
    }
    if (!any) return false;
    if (exp_neg) exp_val = -exp_val;
  }
  if (i != text.size()) return false;
  out.dec_exp += exp_val - frac_digits;
  out.ndigits = kept;
  out.is_zero = out.digits.is_zero() && !out.sticky;
  return true;
}

// Compare num (with a sticky tail) against den. Sticky turns equality into
// "greater than".
int cmp_sticky(const BigUint& num, bool sticky, const BigUint& den) {
  int c = num.cmp(den);
  if (c == 0 && sticky) return 1;
  return c;
}

F16 decimal_to_f16(const ParsedDecimal& d) {
  if (d.is_zero) return make_zero(d.negative);

  // Cheap magnitude screens: >= 10^5 overflows (65520 is the inf
  // threshold), < 10^-8 is below half the smallest subnormal (2^-25).
  long mag10 = d.ndigits + d.dec_exp;  // value in [10^(mag10-1), 10^mag10)
  if (mag10 >= 6) return make_inf(d.negative);
  if (mag10 <= -8) return make_zero(d.negative);

  BigUint num = d.digits;
  bool sticky = d.sticky;
  BigUint den = BigUint::from_u64(1);
  if (d.dec_exp > 0) {
    for (long k = 0; k < d.dec_exp; ++k) num.mul_small(10);
  } else {
    for (long k = 0; k < -d.dec_exp; ++k) den.mul_small(10);
  }

  // Normalize to 1 <= num/den < 2, tracking the binade exponent e.
  int e = 0;
  while (cmp_sticky(num, sticky, den) < 0) {
    num.shl1();
    e -= 1;
  }
  {
    BigUint den2 = den;
    den2.shl1();
    while (cmp_sticky(num, sticky, den2) >= 0) {
      den = den2;
      den2.shl1();
      e += 1;
    }
  }
  if (e > 15) return make_inf(d.negative);

  int bits = e >= -14 ? 11 : 25 + e;
  if (bits <= 0) {
    // Value is in [2^e, 2^(e+1)) with e <= -25: rounds to zero except the
    // half-way point 2^-25 itself (tie to even = zero) or anything above it.
    if (e == -25 && cmp_sticky(num, sticky, den) > 0) {
      return F16::from_bits(static_cast<uint16_t>((d.negative ? 0x8000 : 0) | 1));
    }
    return make_zero(d.negative);
  }

  uint32_t q = 0;
  for (int k = 0; k < bits; ++k) {
    q <<= 1;
    if (cmp_sticky(num, false, den) >= 0) {
      q |= 1;
      num.sub(den);
    }
    num.shl1();
  }
  // Round: next quotient bit plus sticky.
  int c = cmp_sticky(num, sticky, den);
  bool round_bit = c >= 0;
  bool tie = c == 0;  // exact half (sticky already folded in by cmp_sticky)
  if (round_bit && (!tie || (q & 1))) q += 1;

  if (e >= -14) {
    if (q == 0x800) {
      q = 0x400;
      e += 1;
      if (e > 15) return make_inf(d.negative);
    }
    uint16_t enc = static_cast<uint16_t>(((e + 15) << 10) | (q & 0x3ff));
    return F16::from_bits(static_cast<uint16_t>((d.negative ? 0x8000 : 0) | enc));
  }
  // Subnormal: q is already in units of 2^-24; q == 0x400 encodes the
  // smallest normal naturally.
  return F16::from_bits(static_cast<uint16_t>((d.negative ? 0x8000 : 0) | q));
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) != b[i]) return false;
  }
  return true;
}

}  // namespace

F16 from_decimal(std::string_view text) {
  std::string_view body = text;
  bool neg = false;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  if (iequals(body, "inf") || iequals(body, "infinity")) return make_inf(neg);
  if (iequals(body, "nan")) return kQuietNaN;

  ParsedDecimal d;
  if (!parse_decimal_text(text, d)) {
    throw Error(Errc::malformed_literal,
                "malformed binary16 literal: '" + std::string(text) + "'");
  }
  return decimal_to_f16(d);
}

F16 from_literal(std::string_view text) {
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    uint32_t v = 0;
    for (size_t i = 2; i < text.size(); ++i) {
      char ch = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
      uint32_t digit;
      if (ch >= '0' && ch <= '9') {
        digit = static_cast<uint32_t>(ch - '0');
      } else if (ch >= 'a' && ch <= 'f') {
        digit = static_cast<uint32_t>(ch - 'a' + 10);
      } else {
        throw Error(Errc::malformed_literal,
                    "malformed bit pattern: '" + std::string(text) + "'");
      }
      v = v * 16 + digit;
      if (v > 0xffff) {
        throw Error(Errc::malformed_literal,
                    "bit pattern out of range: '" + std::string(text) + "'");
      }
    }
    if (text.size() == 2) {
      throw Error(Errc::malformed_literal, "malformed bit pattern: '" + std::string(text) + "'");
    }
    return F16::from_bits(static_cast<uint16_t>(v));
  }
  return from_decimal(text);
}

std::string to_exact_decimal(F16 a) {
  if (a.is_nan()) return "nan";
  if (a.is_inf()) return a.sign() ? "-inf" : "inf";

  // magnitude * 2^24 is always an integer for finite binary16.
  uint64_t mag24;
  if (a.biased_exp() == 0) {
    mag24 = a.frac();
  } else {
    uint64_t sig = 0x400u | a.frac();
    int e = static_cast<int>(a.biased_exp()) - 15;
    mag24 = sig << (e + 14);
  }

  uint64_t int_part = mag24 >> 24;
  uint64_t frac24 = mag24 & 0xffffff;

  std::string out;
  if (a.sign()) out += '-';
  out += std::to_string(int_part);
  out += '.';
  if (frac24 == 0) {
    out += '0';
    return out;
  }
  // frac24 / 2^24 = frac24 * 5^24 / 10^24: print 24 digits, trim zeros.
  constexpr unsigned __int128 kPow5_24 = 59604644775390625ULL;
  unsigned __int128 scaled = kPow5_24 * frac24;
  char digits[25];
  for (int i = 23; i >= 0; --i) {
    digits[i] = static_cast<char>('0' + static_cast<int>(scaled % 10));
    scaled /= 10;
  }
  int len = 24;
  while (len > 1 && digits[len - 1] == '0') --len;
  out.append(digits, digits + len);
  return out;
}

double to_double(F16 a) {
  if (a.is_nan()) return std::nan("");
  if (a.is_inf()) return a.sign() ? -HUGE_VAL : HUGE_VAL;
  double mag;
  if (a.biased_exp() == 0) {
    mag = std::ldexp(static_cast<double>(a.frac()), -24);
  } else {
    mag = std::ldexp(static_cast<double>(0x400u | a.frac()),
                     static_cast<int>(a.biased_exp()) - 25);
  }
  return a.sign() ? -mag : mag;
}

}  // namespace redmule
