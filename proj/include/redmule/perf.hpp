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

#include "redmule/streamer.hpp"
#include "redmule/trace.hpp"

namespace redmule {

/// Closed-form model of the 8-core software GEMM the accelerator is
/// compared against: sw_cycles = macs / (cores * macs_per_cycle_per_core).
/// The default per-core rate is the large-GEMM aggregate implied by the
/// measured hardware (31.6 MAC/cycle at 22x speedup on 8 cores).
struct SwBaseline {
  int cores = 8;
  double macs_per_cycle_per_core = 0.18;

  double macs_per_cycle() const { return cores * macs_per_cycle_per_core; }
};

// Cluster power split at the measured operating points, reported as
// static ratios (there is no activity-based power model).
inline constexpr double kPowerFracRedmule = 0.69;
inline constexpr double kPowerFracTcdmHci = 0.171;

// Measured operating points of the 22nm implementation: peak efficiency
// and peak throughput.
inline constexpr double kFreqBestEffHz = 476e6;
inline constexpr double kPowerBestEffMw = 43.5;
inline constexpr double kFreqPeakHz = 666e6;
inline constexpr double kPowerPeakMw = 90.7;

struct PerfReport {
  uint64_t cycles = 0;
  uint64_t useful_macs = 0;
  double macs_per_cycle = 0.0;
  double utilization = 0.0;  // macs_per_cycle / (h*l)
  double gflops = 0.0;       // 2 * macs_per_cycle * freq / 1e9
  double sw_cycles = 0.0;
  double speedup = 0.0;  // sw_cycles / cycles
  double energy_j = 0.0;
  TrafficTotals traffic;

  double freq_hz = 0.0;
  double power_mw = 0.0;
};

/// Turns a completed run trace into the headline metrics. An empty trace
/// yields all-zero metrics; a non-positive frequency is a config error.
PerfReport analyze(const CycleTrace& trace, const Geometry& g, double freq_hz, double power_mw,
                   const SwBaseline& baseline);

/// Joules per useful MAC. Undefined (throws) when the run did no work.
double energy_per_mac(const PerfReport& r);

/// JSON object with exactly the PerfReport field names, plus the static
/// power breakdown ratios.
std::string report_json(const PerfReport& r);

std::string report_csv_header();
std::string report_csv_row(const PerfReport& r);

}  // namespace redmule
