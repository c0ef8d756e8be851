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

namespace redmule {

/// Design-time shape of the accelerator array.
///
/// h: FMA columns per row, l: FMA rows, p: pipeline registers inside each
/// FMA (latency p+1). Element and port widths are fixed: this is an FP16
/// engine on 32-bit TCDM ports.
struct Geometry {
  int h = 4;
  int l = 8;
  int p = 3;

  static constexpr int elem_bits = 16;
  static constexpr int port_bits = 32;

  int fma_count() const { return h * l; }

  /// Elements per memory line, per W shift register and per Z row chunk:
  /// h*(p+1). A row of FMAs keeps that many output slots in flight.
  int line_elems() const { return h * (p + 1); }

  /// 32-bit memory ports needed to move one line per cycle, plus the spare
  /// port for non-word-aligned accesses (always counted).
  int required_ports() const {
    int data_ports = (line_elems() * elem_bits + port_bits - 1) / port_bits;
    return data_ports + 1;
  }

  /// FMA latency in cycles.
  int latency() const { return p + 1; }

  /// Cycles an X operand is held at one column; also the ring round-trip.
  int x_hold_cycles() const { return h * (p + 1); }
};

inline constexpr Geometry kDefaultGeometry{4, 8, 3};

/// Returns g unchanged if its bounds hold (h >= 1, l >= 1, p >= 0), throws
/// Error(Errc::invalid_geometry) naming the offending field otherwise.
Geometry validate(Geometry g);

}  // namespace redmule
