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
#include <vector>

#include "redmule/config.hpp"
#include "redmule/golden.hpp"
#include "redmule/trace.hpp"

namespace redmule {

/// Which operand sits in the X buffer. The engine is symmetric: the
/// w_stationary setting runs the role-swapped problem Zt = Wt * Xt (the
/// weight matrix feeds the X buffer) and transposes the result back.
/// Accumulation order per output element is identical either way.
enum class Stationarity : uint8_t { x_stationary, w_stationary };

struct Tile {
  uint64_t m0 = 0, k0 = 0;  // output offsets of this tile
  uint32_t m_rows = 0;      // real rows (<= l)
  uint32_t k_cols = 0;      // real columns (<= line_elems)
  uint32_t pad_rows = 0, pad_cols = 0, pad_n = 0;
  uint64_t n_total = 0;
  uint32_t m_tile = 0, k_tile = 0;  // band / column-chunk indices
};

struct TilePlan {
  uint64_t m = 0, n = 0, k = 0;  // dims of the executed orientation
  Geometry g;
  uint32_t m_tiles = 0, k_tiles = 0;
  uint32_t loops = 0;   // ring loops per tile = n_pad / h
  uint32_t chunks = 0;  // X chunks per row = ceil(n_pad / line_elems)
  uint64_t n_pad = 0;
  bool transposed = false;  // w_stationary role swap applied
  std::vector<Tile> tiles;  // execution order (row band major)
};

/// Decomposes an M x N x K GEMM into array tiles: ceil(M/l) x
/// ceil(K/line_elems) of them in the executed orientation, with the
/// reduction length padded to the next multiple of h (padding is recorded,
/// never stored). Zero dimensions are rejected.
TilePlan plan(uint64_t m, uint64_t n, uint64_t k, const Geometry& g,
              Stationarity st = Stationarity::x_stationary);

struct RunOptions {
  Stationarity stationarity = Stationarity::x_stationary;
  bool record_events = false;
};

struct RunResult {
  MatF16 z;
  CycleTrace trace;
};

/// Runs the GEMM through the cycle model: plans tiles, drives the port
/// slot by slot against the datapath, assembles Z. The result bit-equals
/// gemm_padded(p, g); the trace covers preload, steady state and drain.
RunResult run_gemm(const GemmProblem& p, const Geometry& g, const RunOptions& opts = {});

}  // namespace redmule
