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
#include <optional>
#include <vector>

#include "redmule/config.hpp"
#include "redmule/fp16.hpp"
#include "redmule/trace.hpp"

namespace redmule {

// Cycle model of the l x h semi-systolic FMA array.
//
// Schedule, all in column-0 issue steps: column 0 issues one slot per
// cycle, cycling k = 0..line_elems-1; a slot issued by column c completes
// p+1 cycles later and is issued by column c+1 on that very cycle with the
// next W element of the same k. The last column's completions re-enter
// column 0 exactly h*(p+1) cycles after the slot left it (the ring
// rendezvous), or drain to the Z buffer on the final reduction loop. Each
// column's X operand therefore changes once every h*(p+1) cycles, and each
// W shift register broadcasts one element per cycle to its column.
//
// When a due operand is missing (a W line that has not landed, an X chunk
// still in flight, a Z row not yet drained) the whole array freezes for
// the cycle: nothing ages, nothing issues, a stall event is recorded.
// Loads landed during stalled cycles unfreeze it.

/// Per-tile geometry the array needs to schedule issues and padding.
/// Reduction length is global to a run: every tile runs the same number
/// of ring loops.
struct TileDesc {
  uint32_t rows_real;  // real output rows in this tile (1..l)
  uint32_t k_real;     // real output columns in this tile (1..line_elems)
  uint32_t n_real;     // real reduction length (1..loops*h)
  uint32_t loops;      // ring loops = n_pad / h
  uint32_t m_tile;     // index of the tile's row band
  // Tile index whose end retires this tile's X chunk sets: the last tile
  // of the same row band when the whole reduction fits one chunk (the
  // resident set is then reused across k-tiles), the tile itself otherwise.
  uint32_t x_retire_tile;
};

/// One loaded W line: the h*(p+1) elements column `col` broadcasts during
/// ring loop `loop` of tile `tile`.
struct WDelivery {
  uint32_t tile;
  uint32_t loop;
  uint32_t col;
  std::vector<F16> line;
};

/// One loaded X line: elements n = chunk*line_elems .. +line_elems-1 of one
/// real row of the tile's row band.
struct XDelivery {
  uint32_t row;  // row index within the band, < rows_real
  uint32_t m_tile;
  uint32_t chunk;
  uint32_t rows_expected;
  uint32_t retire_tile;
  std::vector<F16> line;
};

struct Feeds {
  std::optional<WDelivery> w;
  std::optional<XDelivery> x;
  bool drain_grant = false;
};

/// A completed Z row line handed back on a drain grant.
struct ZLine {
  uint32_t tile;
  uint32_t row;  // within the band
  std::vector<F16> values;
};

struct StepResult {
  bool stalled = false;
  int useful_completions = 0;
  std::optional<ZLine> drained;
};

class Datapath {
public:
  /// Geometry must be validated; trace must outlive the datapath.
  Datapath(const Geometry& g, std::vector<TileDesc> tiles, CycleTrace& trace);

  /// Advances one cycle. Deliveries in `feeds` land at the end of the
  /// cycle (one-cycle port latency) and are visible from the next one.
  StepResult step(const Feeds& feeds);

  bool done() const;
  bool compute_started() const { return compute_started_; }
  /// Column-0 issues so far; load deadlines are expressed in this clock.
  uint64_t issue_steps() const { return issue_steps_; }
  int z_pending() const { return z_pending_; }
  /// Useful (non-padded) FMA completions in the last step.
  int busy_macs() const { return last_useful_; }
  /// Whether a W line for this column can land (shadow register empty).
  bool w_stage_free(int col) const { return !wregs_[static_cast<size_t>(col)].staged_valid; }

  // Introspection for tests.
  int resident_x_sets() const { return static_cast<int>(x_sets_.size()); }

private:
  struct PipeSlot {
    bool occupied = false;
    uint32_t tile = 0, loop = 0, k = 0;
    bool n_real = false;
    F16 w;
    std::vector<F16> x;    // one operand per row
    std::vector<F16> acc;  // accumulator inputs per row
  };

  // One FMA column: p+1 pipeline slots as a rotating ring; the slot under
  // `head` completes this cycle and is refilled by this cycle's issue.
  struct Column {
    std::vector<PipeSlot> slots;
    int head = 0;
    int occupancy = 0;
  };

  struct Outbox {
    bool valid = false;
    uint32_t tile = 0, loop = 0, k = 0;
    bool last_loop = false;
    std::vector<F16> vals;
  };

  struct WReg {
    bool cur_valid = false;
    uint32_t tile = 0, loop = 0;
    std::vector<F16> cur;
    bool staged_valid = false;
    uint32_t staged_tile = 0, staged_loop = 0;
    std::vector<F16> staged;
  };

  struct XChunkSet {
    uint32_t m_tile = 0, chunk = 0, retire_tile = 0;
    uint32_t rows_present = 0, rows_expected = 0;
    std::vector<std::vector<F16>> lines;  // [l][line_elems], real rows only
  };

  // Per-row Z storage is a ping-pong pair: finals assemble into one line
  // while the previous completed line waits for its drain grant. A row
  // only stalls the array when a line closes and the drain side is still
  // occupied.
  struct ZRow {
    std::vector<F16> assembling;
    bool pending_valid = false;
    uint32_t pending_tile = 0;
    std::vector<F16> pending;
  };

  struct Cursor {
    uint32_t tile = 0, loop = 0, k = 0;
    bool done = false;
  };

  bool wrap_ready(int col, uint32_t tile, uint32_t loop) const;
  void wrap_register(int col, uint32_t tile, uint32_t loop);
  const XChunkSet* find_x_set(uint32_t m_tile, uint32_t chunk, uint32_t retire_tile) const;
  bool x_ready(uint32_t tile, uint32_t loop, int col) const;
  uint32_t chunk_of(uint32_t n) const { return n / static_cast<uint32_t>(line_elems_); }
  void advance_cursor();
  void retire_x_sets(uint32_t tile, uint32_t loop);
  void land(const Feeds& feeds);

  Geometry g_;
  int line_elems_;
  std::vector<TileDesc> tiles_;
  CycleTrace& trace_;

  Cursor cursor_;
  std::vector<Column> cols_;
  std::vector<Outbox> outbox_;
  std::vector<WReg> wregs_;
  std::vector<XChunkSet> x_sets_;
  std::vector<ZRow> z_rows_;
  int z_pending_ = 0;
  int in_flight_ = 0;  // occupied pipeline slots across all columns
  uint64_t issue_steps_ = 0;
  bool compute_started_ = false;
  int last_useful_ = 0;
  std::vector<int64_t> last_x_change_;  // per column, wall cycle
};

}  // namespace redmule
