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

#include "redmule/datapath.hpp"

#include <algorithm>
#include <stdexcept>

namespace redmule {

Datapath::Datapath(const Geometry& g, std::vector<TileDesc> tiles, CycleTrace& trace)
    : g_(g), line_elems_(g.line_elems()), tiles_(std::move(tiles)), trace_(trace) {
  cols_.resize(g_.h);
  for (auto& c : cols_) {
    c.slots.resize(g_.p + 1);
    for (auto& s : c.slots) {
      s.x.resize(g_.l);
      s.acc.resize(g_.l);
    }
  }
  outbox_.resize(g_.h);
  for (auto& o : outbox_) o.vals.resize(g_.l);
  wregs_.resize(g_.h);
  for (auto& r : wregs_) {
    r.cur.assign(line_elems_, kPosZero);
    r.staged.assign(line_elems_, kPosZero);
  }
  z_rows_.resize(g_.l);
  for (auto& zr : z_rows_) {
    zr.assembling.assign(line_elems_, kPosZero);
    zr.pending.assign(line_elems_, kPosZero);
  }
  last_x_change_.assign(g_.h, -1);
  cursor_.done = tiles_.empty();
}

bool Datapath::done() const { return cursor_.done && in_flight_ == 0 && z_pending_ == 0; }

bool Datapath::wrap_ready(int col, uint32_t tile, uint32_t loop) const {
  const TileDesc& td = tiles_[tile];
  uint32_t n = loop * static_cast<uint32_t>(g_.h) + static_cast<uint32_t>(col);
  if (n >= td.n_real) return true;  // padded reduction step, zero-filled line
  const WReg& r = wregs_[col];
  return r.staged_valid && r.staged_tile == tile && r.staged_loop == loop;
}

void Datapath::wrap_register(int col, uint32_t tile, uint32_t loop) {
  const TileDesc& td = tiles_[tile];
  uint32_t n = loop * static_cast<uint32_t>(g_.h) + static_cast<uint32_t>(col);
  WReg& r = wregs_[col];
  if (n >= td.n_real) {
    std::fill(r.cur.begin(), r.cur.end(), kPosZero);
  } else {
    r.cur.swap(r.staged);
    r.staged_valid = false;
  }
  r.cur_valid = true;
  r.tile = tile;
  r.loop = loop;
}

const Datapath::XChunkSet* Datapath::find_x_set(uint32_t m_tile, uint32_t chunk,
                                                uint32_t retire_tile) const {
  for (const auto& s : x_sets_) {
    if (s.m_tile == m_tile && s.chunk == chunk && s.retire_tile == retire_tile) return &s;
  }
  return nullptr;
}

bool Datapath::x_ready(uint32_t tile, uint32_t loop, int col) const {
  const TileDesc& td = tiles_[tile];
  uint32_t n = loop * static_cast<uint32_t>(g_.h) + static_cast<uint32_t>(col);
  if (n >= td.n_real) return true;  // padded step uses +0 operands
  const XChunkSet* s = find_x_set(td.m_tile, chunk_of(n), td.x_retire_tile);
  return s != nullptr && s->rows_present >= td.rows_real;
}

void Datapath::advance_cursor() {
  if (++cursor_.k == static_cast<uint32_t>(line_elems_)) {
    cursor_.k = 0;
    if (++cursor_.loop == tiles_[cursor_.tile].loops) {
      cursor_.loop = 0;
      if (++cursor_.tile == tiles_.size()) cursor_.done = true;
    }
  }
}

void Datapath::retire_x_sets(uint32_t tile, uint32_t loop) {
  const TileDesc& td = tiles_[tile];
  const uint32_t lat = static_cast<uint32_t>(g_.p) + 1;
  std::erase_if(x_sets_, [&](const XChunkSet& s) {
    if (s.retire_tile != tile) return false;
    uint32_t retire_loop = std::min(td.loops - 1, (s.chunk + 1) * lat - 1);
    return retire_loop == loop;
  });
}

StepResult Datapath::step(const Feeds& feeds) {
  StepResult out;
  const uint64_t now = trace_.cycles;
  const int last_col = g_.h - 1;

  // Drain grant first: it can clear the very hazard stalling the array.
  if (feeds.drain_grant && z_pending_ > 0) {
    for (uint32_t r = 0; r < z_rows_.size(); ++r) {
      if (!z_rows_[r].pending_valid) continue;
      out.drained = ZLine{z_rows_[r].pending_tile, r, z_rows_[r].pending};
      z_rows_[r].pending_valid = false;
      --z_pending_;
      break;
    }
  }

  // Feasibility of everything due to issue this cycle. Any miss freezes
  // the whole array for the cycle.
  bool stall = false;
  if (!cursor_.done) {
    if (cursor_.k == 0 && !wrap_ready(0, cursor_.tile, cursor_.loop)) stall = true;
    if (!stall && !x_ready(cursor_.tile, cursor_.loop, 0)) stall = true;
  }
  for (int c = 0; c < last_col && !stall; ++c) {
    const PipeSlot& s = cols_[c].slots[static_cast<size_t>(cols_[c].head)];
    if (!s.occupied) continue;
    if (s.k == 0 && !wrap_ready(c + 1, s.tile, s.loop)) stall = true;
    if (!stall && !x_ready(s.tile, s.loop, c + 1)) stall = true;
  }
  if (!stall) {
    // A line closing this cycle needs the drain side of its rows free.
    const PipeSlot& fin = cols_[last_col].slots[static_cast<size_t>(cols_[last_col].head)];
    if (fin.occupied && fin.loop + 1 == tiles_[fin.tile].loops &&
        fin.k + 1 == static_cast<uint32_t>(line_elems_)) {
      const TileDesc& td = tiles_[fin.tile];
      for (uint32_t r = 0; r < td.rows_real; ++r) {
        if (z_rows_[r].pending_valid) {
          stall = true;
          break;
        }
      }
    }
  }

  if (stall) {
    // Before the first issue this is just the preload latency, not a
    // schedule violation.
    if (compute_started_) {
      trace_.stall_cycles += 1;
      trace_.event(now, EventKind::stall, -1);
    }
    out.stalled = true;
    last_useful_ = 0;
    land(feeds);
    return out;
  }

  // Completions: each column's head slot finishes now.
  int useful = 0;
  for (int c = 0; c < g_.h; ++c) {
    Outbox& ob = outbox_[c];
    PipeSlot& s = cols_[c].slots[static_cast<size_t>(cols_[c].head)];
    if (!s.occupied) {
      ob.valid = false;
      continue;
    }
    const TileDesc& td = tiles_[s.tile];
    for (int r = 0; r < g_.l; ++r) ob.vals[static_cast<size_t>(r)] = fma(s.x[static_cast<size_t>(r)], s.w, s.acc[static_cast<size_t>(r)]);
    ob.valid = true;
    ob.tile = s.tile;
    ob.loop = s.loop;
    ob.k = s.k;
    ob.last_loop = s.loop + 1 == td.loops;
    trace_.total_completions += static_cast<uint64_t>(g_.l);
    if (s.n_real && s.k < td.k_real) useful += static_cast<int>(td.rows_real);
    s.occupied = false;
    cols_[c].occupancy -= 1;
    in_flight_ -= 1;
    if (trace_.first_completion_cycle < 0) trace_.first_completion_cycle = static_cast<int64_t>(now);
  }

  // Final-loop values from the last column assemble Z row lines; a
  // closing line flips to the drain side (free by the stall check above).
  const Outbox& fb = outbox_[last_col];
  if (fb.valid && fb.last_loop) {
    const TileDesc& td = tiles_[fb.tile];
    for (uint32_t r = 0; r < td.rows_real; ++r) z_rows_[r].assembling[fb.k] = fb.vals[r];
    if (fb.k + 1 == static_cast<uint32_t>(line_elems_)) {
      for (uint32_t r = 0; r < td.rows_real; ++r) {
        z_rows_[r].pending.swap(z_rows_[r].assembling);
        z_rows_[r].pending_valid = true;
        z_rows_[r].pending_tile = fb.tile;
        z_pending_ += 1;
      }
      trace_.event(now, EventKind::z_line, static_cast<int64_t>(fb.tile));
    }
  }

  // Issues. Column 0 consumes the ring feedback; column c consumes the
  // hand-off completed by column c-1 this very cycle.
  if (!cursor_.done) {
    const TileDesc& td = tiles_[cursor_.tile];
    if (cursor_.k == 0) {
      wrap_register(0, cursor_.tile, cursor_.loop);
      if (last_x_change_[0] >= 0) {
        trace_.x_hold_hist[now - static_cast<uint64_t>(last_x_change_[0])] += 1;
      }
      last_x_change_[0] = static_cast<int64_t>(now);
    }
    PipeSlot& s = cols_[0].slots[static_cast<size_t>(cols_[0].head)];
    s.occupied = true;
    s.tile = cursor_.tile;
    s.loop = cursor_.loop;
    s.k = cursor_.k;
    const uint32_t n = cursor_.loop * static_cast<uint32_t>(g_.h);
    s.n_real = n < td.n_real;
    s.w = wregs_[0].cur[cursor_.k];
    const XChunkSet* xs = nullptr;
    if (s.n_real && td.rows_real > 0) xs = find_x_set(td.m_tile, chunk_of(n), td.x_retire_tile);
    const uint32_t e = n % static_cast<uint32_t>(line_elems_);
    for (uint32_t r = 0; r < static_cast<uint32_t>(g_.l); ++r) {
      s.x[r] = (s.n_real && r < td.rows_real) ? xs->lines[r][e] : kPosZero;
    }
    if (cursor_.loop == 0) {
      std::fill(s.acc.begin(), s.acc.end(), kPosZero);
    } else {
      if (!fb.valid || fb.last_loop || fb.tile != cursor_.tile ||
          fb.loop + 1 != cursor_.loop || fb.k != cursor_.k) {
        throw std::logic_error("datapath: ring rendezvous broken");
      }
      s.acc = fb.vals;
    }
    cols_[0].occupancy += 1;
    in_flight_ += 1;
    issue_steps_ += 1;
    trace_.launch_steps += 1;
    trace_.last_launch_cycle = static_cast<int64_t>(now);
    if (!compute_started_) {
      compute_started_ = true;
      trace_.compute_start_cycle = static_cast<int64_t>(now);
    }
    if (g_.h == 1 && cursor_.k + 1 == static_cast<uint32_t>(line_elems_)) {
      retire_x_sets(cursor_.tile, cursor_.loop);
    }
    advance_cursor();
  }

  for (int c = 1; c < g_.h; ++c) {
    const Outbox& in = outbox_[c - 1];
    if (!in.valid) continue;
    const TileDesc& td = tiles_[in.tile];
    if (in.k == 0) {
      wrap_register(c, in.tile, in.loop);
      if (last_x_change_[c] >= 0) {
        trace_.x_hold_hist[now - static_cast<uint64_t>(last_x_change_[c])] += 1;
      }
      last_x_change_[c] = static_cast<int64_t>(now);
    }
    PipeSlot& s = cols_[c].slots[static_cast<size_t>(cols_[c].head)];
    s.occupied = true;
    s.tile = in.tile;
    s.loop = in.loop;
    s.k = in.k;
    const uint32_t n = in.loop * static_cast<uint32_t>(g_.h) + static_cast<uint32_t>(c);
    s.n_real = n < td.n_real;
    s.w = wregs_[c].cur[in.k];
    const XChunkSet* xs = nullptr;
    if (s.n_real && td.rows_real > 0) xs = find_x_set(td.m_tile, chunk_of(n), td.x_retire_tile);
    const uint32_t e = n % static_cast<uint32_t>(line_elems_);
    for (uint32_t r = 0; r < static_cast<uint32_t>(g_.l); ++r) {
      s.x[r] = (s.n_real && r < td.rows_real) ? xs->lines[r][e] : kPosZero;
    }
    s.acc = in.vals;
    cols_[c].occupancy += 1;
    in_flight_ += 1;
    if (c == last_col && in.k + 1 == static_cast<uint32_t>(line_elems_)) {
      retire_x_sets(in.tile, in.loop);
    }
  }

  // Age every pipeline by one.
  for (auto& c : cols_) c.head = (c.head + 1) % (g_.p + 1);

  trace_.useful_macs += static_cast<uint64_t>(useful);
  last_useful_ = useful;
  out.useful_completions = useful;
  land(feeds);
  return out;
}

void Datapath::land(const Feeds& feeds) {
  if (feeds.w) {
    WReg& r = wregs_[feeds.w->col];
    if (r.staged_valid) throw std::logic_error("datapath: W stage overrun");
    r.staged = feeds.w->line;
    r.staged_tile = feeds.w->tile;
    r.staged_loop = feeds.w->loop;
    r.staged_valid = true;
  }
  if (feeds.x) {
    const XDelivery& d = *feeds.x;
    XChunkSet* set = nullptr;
    for (auto& s : x_sets_) {
      if (s.m_tile == d.m_tile && s.chunk == d.chunk && s.retire_tile == d.retire_tile) {
        set = &s;
        break;
      }
    }
    if (set == nullptr) {
      x_sets_.emplace_back();
      set = &x_sets_.back();
      set->m_tile = d.m_tile;
      set->chunk = d.chunk;
      set->retire_tile = d.retire_tile;
      set->rows_expected = d.rows_expected;
      set->lines.assign(static_cast<size_t>(g_.l), std::vector<F16>());
    }
    if (!set->lines[d.row].empty()) throw std::logic_error("datapath: duplicate X line");
    set->lines[d.row] = d.line;
    set->rows_present += 1;
    if (x_sets_.size() > 64) throw std::logic_error("datapath: X residency leak");
  }
}

}  // namespace redmule
