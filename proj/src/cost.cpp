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

#include "redmule/cost.hpp"

#include <cstdio>

#include "redmule/error.hpp"

namespace redmule {

double area_mm2(const Geometry& g, const AreaModel& m) {
  return m.fixed_mm2 + m.per_fma_mm2 * static_cast<double>(g.fma_count());
}

std::vector<SweepRow> sweep(IntRange h_range, IntRange l_range, int p, const AreaModel& m) {
  if (h_range.lo < 1 || h_range.hi < h_range.lo || l_range.lo < 1 || l_range.hi < l_range.lo) {
    throw Error(Errc::config, "sweep ranges must be non-empty with bounds >= 1");
  }
  if (p < 0) throw Error(Errc::config, "sweep requires P >= 0");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<size_t>(h_range.hi - h_range.lo + 1) *
               static_cast<size_t>(l_range.hi - l_range.lo + 1));
  for (int h = h_range.lo; h <= h_range.hi; ++h) {
    for (int l = l_range.lo; l <= l_range.hi; ++l) {
      Geometry g{h, l, p};
      SweepRow r;
      r.h = h;
      r.l = l;
      r.fma_count = g.fma_count();
      r.area_mm2 = area_mm2(g, m);
      r.ports = g.required_ports();
      r.peak_macs_per_cycle = static_cast<double>(g.fma_count());
      rows.push_back(r);
    }
  }
  return rows;
}

std::string sweep_csv_header() { return "H,L,fma_count,area_mm2,ports,peak_macs_per_cycle"; }

std::string sweep_csv_row(const SweepRow& r) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.6g,%d,%.6g", r.h, r.l, r.fma_count, r.area_mm2,
                r.ports, r.peak_macs_per_cycle);
  return buf;
}

}  // namespace redmule
