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
#include <iosfwd>
#include <map>
#include <vector>

#include "redmule/config.hpp"

namespace redmule {

enum class EventKind : uint8_t { w_load, x_load, z_store, stall, z_line };

struct TraceEvent {
  uint64_t cycle;
  EventKind kind;
  int64_t index;  // line/row index, -1 when not meaningful
};

/// Per-run event log and aggregate counters of one simulation instance.
/// Counters are always maintained; the per-cycle event list only when
/// record_events is set (it grows with run length).
struct CycleTrace {
  Geometry geometry;

  uint64_t cycles = 0;
  uint64_t useful_macs = 0;         // FMA completions with real m, n and k
  uint64_t total_completions = 0;   // all FMA completions, padded included
  uint64_t launch_steps = 0;        // column-0 issue count
  uint64_t stall_cycles = 0;
  int64_t compute_start_cycle = -1;   // first column-0 issue
  int64_t first_completion_cycle = -1;
  int64_t last_launch_cycle = -1;

  // Port side.
  uint64_t w_lines = 0;
  uint64_t x_lines = 0;
  uint64_t z_lines = 0;
  uint64_t idle_cycles = 0;
  uint64_t bytes_moved = 0;  // real (unpadded) elements through the port, in bytes

  // Wall-cycle gaps between consecutive W line loads, and between
  // consecutive X operand changes of any one column. On a stall-free run
  // the second histogram holds the single key h*(p+1).
  std::map<uint64_t, uint64_t> w_gap_hist;
  std::map<uint64_t, uint64_t> x_hold_hist;

  bool record_events = false;
  std::vector<TraceEvent> events;

  uint64_t preload_cycles() const {
    return compute_start_cycle < 0 ? cycles : static_cast<uint64_t>(compute_start_cycle);
  }

  void event(uint64_t cycle, EventKind kind, int64_t index) {
    if (record_events) events.push_back(TraceEvent{cycle, kind, index});
  }

  /// CSV with columns cycle,unit,event,detail (needs record_events).
  void write_csv(std::ostream& out) const;
};

}  // namespace redmule
