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
#include <vector>

#include "redmule/perf.hpp"
#include "redmule/tiler.hpp"

namespace redmule {

struct DenseLayer {
  uint64_t n_in = 0;
  uint64_t n_out = 0;
};

/// MLPerf Tiny deep autoencoder: 640 in, hidden 128x4, bottleneck 8,
/// hidden 128x4, 640 out.
std::vector<DenseLayer> default_autoencoder_layers();

enum class Phase : uint8_t { forward, dgrad, wgrad };
const char* phase_name(Phase p);

/// One GEMM of a training step. Forward: Z(n_out x B) = W(n_out x n_in) *
/// A(n_in x B); dgrad mirrors it with the transposed weights; wgrad
/// contracts over the batch.
struct GemmSpec {
  Phase phase;
  int layer;
  uint64_t m, n, k;
};

struct TrainingStep {
  std::vector<GemmSpec> gemms;
  /// Largest single-GEMM working set (X + W + Z), in bytes at 2 B/element:
  /// what must fit in L2 when layers are streamed one at a time.
  uint64_t footprint_bytes = 0;
};

/// Forward plus backward GEMM list at the given batch size.
TrainingStep autoencoder_step(uint64_t batch, const std::vector<DenseLayer>& layers);

struct BenchGemmResult {
  GemmSpec spec;
  PerfReport report;
};

struct BenchResult {
  std::vector<BenchGemmResult> per_gemm;
  uint64_t total_cycles = 0;
  uint64_t total_macs = 0;
  double aggregate_macs_per_cycle = 0.0;
  double aggregate_speedup = 0.0;  // sum of baseline cycles / sum of cycles
  uint64_t footprint_bytes = 0;
};

/// Simulates every GEMM of the step on seeded random data (each run is
/// verified bit-exact against the ordered reference before it counts).
BenchResult bench(uint64_t batch, const std::vector<DenseLayer>& layers, const Geometry& g,
                  const SwBaseline& baseline, double freq_hz, double power_mw, uint64_t seed);

std::string bench_csv_header();
std::string bench_csv_row(const BenchGemmResult& r);
std::string bench_json(const BenchResult& r);

}  // namespace redmule
