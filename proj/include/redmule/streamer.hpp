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

#include "redmule/trace.hpp"

namespace redmule {

/// The accelerator sees memory through one wide port (line_elems 16-bit
/// elements plus the spare word): one load OR one store per cycle, one
/// cycle of latency, no arbitration behind it.
struct PortModel {
  static constexpr int latency_cycles = 1;
  int width_bits(const Geometry& g) const { return g.required_ports() * Geometry::port_bits; }
};

enum class PortOp : uint8_t { idle, w_load, x_load, z_store };

/// What the datapath and the load queues want from the port this cycle.
struct Demands {
  bool w_due = false;
  int x_pending = 0;
  int z_pending = 0;
};

/// Slot policy. The W stream keeps the array fed and is never preempted;
/// in the free slots stores drain the Z buffer before X refills happen,
/// which cannot starve X at sane geometries (stores and refills together
/// need fewer slots than the W cadence leaves free).
PortOp plan_cycle(const Demands& d);

struct TrafficTotals {
  uint64_t w_lines = 0;
  uint64_t x_lines = 0;
  uint64_t z_lines = 0;
  uint64_t idle_cycles = 0;
};

TrafficTotals traffic_totals(const CycleTrace& trace);

}  // namespace redmule
