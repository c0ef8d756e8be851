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

#include "redmule/workloads.hpp"

#include <algorithm>
#include <json.hpp>

#include "redmule/error.hpp"
#include "redmule/golden.hpp"
#include "redmule/randmat.hpp"

namespace redmule {

std::vector<DenseLayer> default_autoencoder_layers() {
  const uint64_t dims[] = {640, 128, 128, 128, 128, 8, 128, 128, 128, 128, 640};
  std::vector<DenseLayer> layers;
  for (size_t i = 0; i + 1 < std::size(dims); ++i) layers.push_back({dims[i], dims[i + 1]});
  return layers;
}

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::forward:
      return "forward";
    case Phase::dgrad:
      return "dgrad";
    case Phase::wgrad:
      return "wgrad";
  }
  return "?";
}

TrainingStep autoencoder_step(uint64_t batch, const std::vector<DenseLayer>& layers) {
  if (batch < 1) throw Error(Errc::config, "batch size must be >= 1");
  if (layers.empty()) throw Error(Errc::config, "layer stack must not be empty");
  for (const DenseLayer& l : layers) {
    if (l.n_in == 0 || l.n_out == 0) throw Error(Errc::config, "layer dimensions must be >= 1");
  }

  TrainingStep step;
  for (size_t i = 0; i < layers.size(); ++i) {
    step.gemms.push_back(
        {Phase::forward, static_cast<int>(i), layers[i].n_out, layers[i].n_in, batch});
  }
  for (size_t i = layers.size(); i-- > 0;) {
    step.gemms.push_back(
        {Phase::dgrad, static_cast<int>(i), layers[i].n_in, layers[i].n_out, batch});
    step.gemms.push_back(
        {Phase::wgrad, static_cast<int>(i), layers[i].n_out, batch, layers[i].n_in});
  }

  for (const GemmSpec& s : step.gemms) {
    uint64_t elems = s.m * s.n + s.n * s.k + s.m * s.k;
    step.footprint_bytes = std::max(step.footprint_bytes, elems * 2);
  }
  return step;
}

BenchResult bench(uint64_t batch, const std::vector<DenseLayer>& layers, const Geometry& g,
                  const SwBaseline& baseline, double freq_hz, double power_mw, uint64_t seed) {
  TrainingStep step = autoencoder_step(batch, layers);

  BenchResult out;
  out.footprint_bytes = step.footprint_bytes;
  SplitMix64 rng(seed);
  double sw_total = 0.0;

  for (const GemmSpec& s : step.gemms) {
    GemmProblem p;
    p.x = random_mat(s.m, s.n, rng, ValueMix::finite);
    p.w = random_mat(s.n, s.k, rng, ValueMix::finite);

    RunResult run = run_gemm(p, g);
    if (!(run.z == gemm_padded(p, g))) {
      throw Error(Errc::verification, "bench: simulated output diverged from the reference");
    }

    BenchGemmResult r;
    r.spec = s;
    r.report = analyze(run.trace, g, freq_hz, power_mw, baseline);
    out.total_cycles += r.report.cycles;
    out.total_macs += r.report.useful_macs;
    sw_total += r.report.sw_cycles;
    out.per_gemm.push_back(std::move(r));
  }

  if (out.total_cycles > 0) {
    out.aggregate_macs_per_cycle =
        static_cast<double>(out.total_macs) / static_cast<double>(out.total_cycles);
    out.aggregate_speedup = sw_total / static_cast<double>(out.total_cycles);
  }
  return out;
}

std::string bench_csv_header() { return "phase,layer,M,N,K,cycles,macs_per_cycle,speedup"; }

std::string bench_csv_row(const BenchGemmResult& r) {
  nlohmann::ordered_json row = nlohmann::ordered_json::array(
      {phase_name(r.spec.phase), r.spec.layer, r.spec.m, r.spec.n, r.spec.k, r.report.cycles,
       r.report.macs_per_cycle, r.report.speedup});
  std::string out;
  for (size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += row[i].is_string() ? row[i].get<std::string>() : row[i].dump();
  }
  return out;
}

std::string bench_json(const BenchResult& r) {
  nlohmann::ordered_json j;
  j["gemms"] = r.per_gemm.size();
  j["total_cycles"] = r.total_cycles;
  j["total_macs"] = r.total_macs;
  j["aggregate_macs_per_cycle"] = r.aggregate_macs_per_cycle;
  j["aggregate_speedup"] = r.aggregate_speedup;
  j["footprint_bytes"] = r.footprint_bytes;
  j["footprint_kib"] = static_cast<double>(r.footprint_bytes) / 1024.0;
  return j.dump(2);
}

}  // namespace redmule
