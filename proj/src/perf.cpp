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

#include "redmule/perf.hpp"

#include <json.hpp>

#include "redmule/error.hpp"

namespace redmule {

PerfReport analyze(const CycleTrace& trace, const Geometry& g, double freq_hz, double power_mw,
                   const SwBaseline& baseline) {
  if (freq_hz <= 0.0) throw Error(Errc::config, "frequency must be positive");
  if (baseline.cores <= 0 || baseline.macs_per_cycle_per_core <= 0.0) {
    throw Error(Errc::config, "software baseline must have positive throughput");
  }

  PerfReport r;
  r.cycles = trace.cycles;
  r.useful_macs = trace.useful_macs;
  r.traffic = traffic_totals(trace);
  r.freq_hz = freq_hz;
  r.power_mw = power_mw;

  if (trace.cycles == 0) return r;

  r.macs_per_cycle = static_cast<double>(trace.useful_macs) / static_cast<double>(trace.cycles);
  r.utilization = r.macs_per_cycle / static_cast<double>(g.fma_count());
  r.gflops = 2.0 * r.macs_per_cycle * freq_hz / 1e9;
  r.sw_cycles = static_cast<double>(trace.useful_macs) / baseline.macs_per_cycle();
  r.speedup = r.sw_cycles / static_cast<double>(trace.cycles);
  r.energy_j = power_mw / 1000.0 * static_cast<double>(trace.cycles) / freq_hz;
  return r;
}

double energy_per_mac(const PerfReport& r) {
  if (r.useful_macs == 0) {
    throw Error(Errc::undefined_metric, "energy per MAC is undefined for a run with no work");
  }
  return r.energy_j / static_cast<double>(r.useful_macs);
}

std::string report_json(const PerfReport& r) {
  nlohmann::ordered_json j;
  j["cycles"] = r.cycles;
  j["useful_macs"] = r.useful_macs;
  j["macs_per_cycle"] = r.macs_per_cycle;
  j["utilization"] = r.utilization;
  j["gflops"] = r.gflops;
  j["sw_cycles"] = r.sw_cycles;
  j["speedup"] = r.speedup;
  j["energy_j"] = r.energy_j;
  j["traffic"] = {{"w_lines", r.traffic.w_lines},
                  {"x_lines", r.traffic.x_lines},
                  {"z_lines", r.traffic.z_lines},
                  {"idle_cycles", r.traffic.idle_cycles}};
  j["power_breakdown"] = {{"redmule", kPowerFracRedmule}, {"tcdm_hci", kPowerFracTcdmHci}};
  return j.dump(2);
}

std::string report_csv_header() {
  return "cycles,useful_macs,macs_per_cycle,utilization,gflops,sw_cycles,speedup,energy_j,"
         "w_lines,x_lines,z_lines,idle_cycles";
}

std::string report_csv_row(const PerfReport& r) {
  nlohmann::ordered_json row = nlohmann::ordered_json::array(
      {r.cycles, r.useful_macs, r.macs_per_cycle, r.utilization, r.gflops, r.sw_cycles, r.speedup,
       r.energy_j, r.traffic.w_lines, r.traffic.x_lines, r.traffic.z_lines,
       r.traffic.idle_cycles});
  std::string out;
  for (size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += row[i].dump();
  }
  return out;
}

}  // namespace redmule
