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

#include "redmule/tiler.hpp"

#include <stdexcept>
#include <string>

#include "redmule/datapath.hpp"
#include "redmule/error.hpp"
#include "redmule/streamer.hpp"

namespace redmule {

namespace {

TilePlan plan_oriented(uint64_t m, uint64_t n, uint64_t k, const Geometry& g) {
  TilePlan tp;
  tp.m = m;
  tp.n = n;
  tp.k = k;
  tp.g = g;
  const uint64_t h = static_cast<uint64_t>(g.h);
  const uint64_t l = static_cast<uint64_t>(g.l);
  const uint64_t le = static_cast<uint64_t>(g.line_elems());
  tp.n_pad = (n + h - 1) / h * h;
  tp.loops = static_cast<uint32_t>(tp.n_pad / h);
  tp.chunks = static_cast<uint32_t>((tp.n_pad + le - 1) / le);
  tp.m_tiles = static_cast<uint32_t>((m + l - 1) / l);
  tp.k_tiles = static_cast<uint32_t>((k + le - 1) / le);
  tp.tiles.reserve(static_cast<size_t>(tp.m_tiles) * tp.k_tiles);
  for (uint32_t mt = 0; mt < tp.m_tiles; ++mt) {
    for (uint32_t kt = 0; kt < tp.k_tiles; ++kt) {
      Tile t;
      t.m_tile = mt;
      t.k_tile = kt;
      t.m0 = static_cast<uint64_t>(mt) * l;
      t.k0 = static_cast<uint64_t>(kt) * le;
      t.m_rows = static_cast<uint32_t>(std::min(l, m - t.m0));
      t.k_cols = static_cast<uint32_t>(std::min(le, k - t.k0));
      t.pad_rows = static_cast<uint32_t>(l) - t.m_rows;
      t.pad_cols = static_cast<uint32_t>(le) - t.k_cols;
      t.pad_n = static_cast<uint32_t>(tp.n_pad - n);
      t.n_total = n;
      tp.tiles.push_back(t);
    }
  }
  return tp;
}

// Next W line to load: walks (tile, loop, col) over real reduction rows.
class WNeeds {
public:
  WNeeds(const TilePlan& tp) : tp_(tp) { skip_padded(); }

  bool done() const { return tile_ == tp_.tiles.size(); }

  uint64_t first_use_step() const {
    return (static_cast<uint64_t>(tile_) * tp_.loops + loop_) * tp_.g.line_elems() +
           static_cast<uint64_t>(col_) * (tp_.g.p + 1);
  }

  bool due(uint64_t issue_step) const {
    return !done() && first_use_step() <= issue_step + static_cast<uint64_t>(tp_.g.p + 1);
  }

  uint32_t peek_col() const { return col_; }

  struct Entry {
    uint32_t tile, loop, col, n;
  };

  Entry pop() {
    Entry e{static_cast<uint32_t>(tile_), loop_, col_,
            loop_ * static_cast<uint32_t>(tp_.g.h) + col_};
    advance();
    skip_padded();
    return e;
  }

private:
  void advance() {
    if (++col_ == static_cast<uint32_t>(tp_.g.h)) {
      col_ = 0;
      if (++loop_ == tp_.loops) {
        loop_ = 0;
        ++tile_;
      }
    }
  }

  void skip_padded() {
    while (!done() && loop_ * static_cast<uint64_t>(tp_.g.h) + col_ >= tp_.n) advance();
  }

  const TilePlan& tp_;
  size_t tile_ = 0;
  uint32_t loop_ = 0, col_ = 0;
};

// Next X line to load. A tile's chunk set is loaded at the band's first
// tile only when the whole reduction fits one chunk (it then stays
// resident across the band); otherwise chunks stream per tile.
class XNeeds {
public:
  explicit XNeeds(const TilePlan& tp) : tp_(tp) { skip_non_emitting(); }

  bool done() const { return tile_ == tp_.tiles.size(); }

  uint64_t first_use_step() const {
    return (static_cast<uint64_t>(tile_) * tp_.loops + static_cast<uint64_t>(chunk_) * (tp_.g.p + 1)) *
           tp_.g.line_elems();
  }

  bool pending(uint64_t issue_step, uint64_t window) const {
    return !done() && first_use_step() <= issue_step + window;
  }

  bool boot_pending() const { return !done() && first_use_step() == 0; }

  struct Entry {
    uint32_t tile, chunk, row;
  };

  Entry pop() {
    Entry e{static_cast<uint32_t>(tile_), chunk_, row_};
    advance();
    return e;
  }

private:
  bool emits(size_t tile) const {
    return tp_.chunks > 1 || tp_.tiles[tile].k_tile == 0;
  }

  void advance() {
    if (++row_ == tp_.tiles[tile_].m_rows) {
      row_ = 0;
      if (++chunk_ == tp_.chunks) {
        chunk_ = 0;
        ++tile_;
        skip_non_emitting();
      }
    }
  }

  void skip_non_emitting() {
    while (!done() && !emits(tile_)) ++tile_;
  }

  const TilePlan& tp_;
  size_t tile_ = 0;
  uint32_t chunk_ = 0, row_ = 0;
};

}  // namespace

TilePlan plan(uint64_t m, uint64_t n, uint64_t k, const Geometry& g, Stationarity st) {
  validate(g);
  if (m == 0 || n == 0 || k == 0) {
    throw Error(Errc::dimension_mismatch, "gemm dimensions must be >= 1, got " +
                                              std::to_string(m) + "x" + std::to_string(n) + "x" +
                                              std::to_string(k));
  }
  if (n > 0xffffffffull) {
    throw Error(Errc::dimension_mismatch, "reduction length out of range");
  }
  if (st == Stationarity::w_stationary) {
    TilePlan tp = plan_oriented(k, n, m, g);
    tp.transposed = true;
    return tp;
  }
  return plan_oriented(m, n, k, g);
}

RunResult run_gemm(const GemmProblem& p, const Geometry& g0, const RunOptions& opts) {
  const Geometry g = validate(g0);
  if (p.x.cols != p.w.rows) {
    throw Error(Errc::dimension_mismatch,
                "gemm shape mismatch: X is " + std::to_string(p.x.rows) + "x" +
                    std::to_string(p.x.cols) + ", W is " + std::to_string(p.w.rows) + "x" +
                    std::to_string(p.w.cols));
  }
  TilePlan tp = plan(p.x.rows, p.x.cols, p.w.cols, g, opts.stationarity);

  // Role swap: the "stationary" operand feeds the X buffer.
  MatF16 xt, wt;
  const MatF16* xm = &p.x;
  const MatF16* wm = &p.w;
  if (tp.transposed) {
    xt = p.w.transposed();
    wt = p.x.transposed();
    xm = &xt;
    wm = &wt;
  }

  const uint32_t le = static_cast<uint32_t>(g.line_elems());

  std::vector<TileDesc> descs(tp.tiles.size());
  for (size_t i = 0; i < tp.tiles.size(); ++i) {
    const Tile& t = tp.tiles[i];
    TileDesc& d = descs[i];
    d.rows_real = t.m_rows;
    d.k_real = t.k_cols;
    d.n_real = static_cast<uint32_t>(tp.n);
    d.loops = tp.loops;
    d.m_tile = t.m_tile;
    // Band-resident chunk sets outlive all the band's tiles.
    d.x_retire_tile = tp.chunks > 1
                          ? static_cast<uint32_t>(i)
                          : static_cast<uint32_t>(t.m_tile) * tp.k_tiles + (tp.k_tiles - 1);
  }

  RunResult out;
  out.trace.geometry = g;
  out.trace.record_events = opts.record_events;
  CycleTrace& trace = out.trace;

  Datapath dp(g, descs, trace);
  WNeeds wneeds(tp);
  XNeeds xneeds(tp);

  out.z = MatF16(tp.m, tp.k);
  std::vector<uint8_t> written(tp.m * tp.k, 0);

  const uint64_t x_window = 2ull * static_cast<uint64_t>(g.p + 1) * le;
  int64_t last_w_cycle = -1;
  bool last_w_steady = false;  // last W load happened after compute start

  while (!dp.done()) {
    Demands dem;
    // The first W line waits for the X preload; afterwards the W cadence
    // owns the port whenever a line is due and its shadow register can
    // accept it.
    const bool boot_block = !dp.compute_started() && xneeds.boot_pending();
    dem.w_due = !boot_block && wneeds.due(dp.issue_steps()) &&
                dp.w_stage_free(static_cast<int>(wneeds.peek_col()));
    dem.x_pending = xneeds.pending(dp.issue_steps(), x_window) ? 1 : 0;
    dem.z_pending = dp.z_pending();

    Feeds feeds;
    int64_t z_store_row = -1;
    switch (plan_cycle(dem)) {
      case PortOp::w_load: {
        auto e = wneeds.pop();
        const Tile& t = tp.tiles[e.tile];
        WDelivery d;
        d.tile = e.tile;
        d.loop = e.loop;
        d.col = e.col;
        d.line.resize(le);
        for (uint32_t j = 0; j < le; ++j) {
          d.line[j] = j < t.k_cols ? wm->at(e.n, t.k0 + j) : kPosZero;
        }
        trace.w_lines += 1;
        trace.bytes_moved += static_cast<uint64_t>(t.k_cols) * 2;
        trace.event(trace.cycles, EventKind::w_load, static_cast<int64_t>(e.n));
        // The cadence histogram covers the streaming phase only; the
        // preload W line and the first line after it sit on the boot
        // boundary.
        if (last_w_cycle >= 0 && last_w_steady) {
          trace.w_gap_hist[trace.cycles - static_cast<uint64_t>(last_w_cycle)] += 1;
        }
        last_w_cycle = static_cast<int64_t>(trace.cycles);
        last_w_steady = dp.compute_started();
        feeds.w = std::move(d);
        break;
      }
      case PortOp::x_load: {
        auto e = xneeds.pop();
        const Tile& t = tp.tiles[e.tile];
        XDelivery d;
        d.row = e.row;
        d.m_tile = t.m_tile;
        d.chunk = e.chunk;
        d.rows_expected = t.m_rows;
        d.retire_tile = descs[e.tile].x_retire_tile;
        d.line.resize(le);
        uint64_t real = 0;
        for (uint32_t j = 0; j < le; ++j) {
          uint64_t n = static_cast<uint64_t>(e.chunk) * le + j;
          if (n < tp.n) {
            d.line[j] = xm->at(t.m0 + e.row, n);
            ++real;
          } else {
            d.line[j] = kPosZero;
          }
        }
        trace.x_lines += 1;
        trace.bytes_moved += real * 2;
        trace.event(trace.cycles, EventKind::x_load, static_cast<int64_t>(t.m0 + e.row));
        feeds.x = std::move(d);
        break;
      }
      case PortOp::z_store:
        feeds.drain_grant = true;
        break;
      case PortOp::idle:
        trace.idle_cycles += 1;
        break;
    }

    StepResult res = dp.step(feeds);
    if (res.drained) {
      const ZLine& zl = *res.drained;
      const Tile& t = tp.tiles[zl.tile];
      const uint64_t m_abs = t.m0 + zl.row;
      for (uint32_t j = 0; j < t.k_cols; ++j) {
        out.z.at(m_abs, t.k0 + j) = zl.values[j];
        written[m_abs * tp.k + t.k0 + j] += 1;
      }
      trace.z_lines += 1;
      trace.bytes_moved += static_cast<uint64_t>(t.k_cols) * 2;
      trace.event(trace.cycles, EventKind::z_store, static_cast<int64_t>(m_abs));
      z_store_row = static_cast<int64_t>(m_abs);
    }
    (void)z_store_row;
    trace.cycles += 1;
  }

  for (uint8_t w : written) {
    if (w != 1) throw std::logic_error("tiler: output cell not written exactly once");
  }

  if (tp.transposed) out.z = out.z.transposed();
  return out;
}

}  // namespace redmule
