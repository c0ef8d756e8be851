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

#include <string>
#include <vector>

#include "redmule/config.hpp"

namespace redmule {

/// Linear area model in 22nm: fixed overhead plus a per-FMA slope. The
/// default coefficients hit the three published anchors at once
/// (32 FMAs -> 0.070 mm2, 256 -> 0.500, 512 -> 0.992). P's contribution is
/// folded into the per-FMA term; the published sweep keeps P fixed.
struct AreaModel {
  double fixed_mm2 = 0.0086;
  double per_fma_mm2 = 0.00192;
};

double area_mm2(const Geometry& g, const AreaModel& m = {});

struct IntRange {
  int lo = 0;
  int hi = 0;  // inclusive
};

struct SweepRow {
  int h = 0;
  int l = 0;
  int fma_count = 0;
  double area_mm2 = 0.0;
  int ports = 0;
  double peak_macs_per_cycle = 0.0;
};

/// One row per (H, L) pair, H-major then L, with the given fixed P.
/// Empty or invalid ranges are a config error.
std::vector<SweepRow> sweep(IntRange h_range, IntRange l_range, int p, const AreaModel& m = {});

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& r);

}  // namespace redmule
