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

#include "redmule/config.hpp"
#include "redmule/cost.hpp"
#include "redmule/fp16.hpp"
#include "redmule/perf.hpp"
#include "redmule/tiler.hpp"

namespace redmule {

enum class OutputFormat : uint8_t { json, csv };
enum class TraceVerbosity : uint8_t { off, summary, per_cycle };

/// Everything a run needs. Defaults first, then config-file values, then
/// command-line flags, each layer overriding the previous one.
struct RunConfig {
  Geometry geometry = kDefaultGeometry;
  double frequency_hz = kFreqPeakHz;
  double power_mw = kPowerPeakMw;
  SwBaseline baseline;
  AreaModel area;
  Stationarity stationarity = Stationarity::x_stationary;
  uint64_t seed = 1;
  OutputFormat format = OutputFormat::json;
  TraceVerbosity trace = TraceVerbosity::off;
  RoundingMode rounding = RoundingMode::nearest_even;
};

/// Flat key = value text, '#' comments. Keys: H, L, P, frequency_hz,
/// power_mw, sw_cores, sw_macs_per_cycle_per_core, stationarity, seed,
/// rounding, format, trace, area_fixed_mm2, area_per_fma_mm2. Unknown keys
/// and unparsable values are config errors; so is any rounding mode other
/// than round-to-nearest-even.
RunConfig load_config_file(const std::string& path, RunConfig base);

Stationarity parse_stationarity(const std::string& text);
OutputFormat parse_format(const std::string& text);
TraceVerbosity parse_trace_verbosity(const std::string& text);

}  // namespace redmule
