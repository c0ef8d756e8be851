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

#include <doctest.h>

#include <cmath>

#include "redmule/error.hpp"
#include "redmule/workloads.hpp"

using namespace redmule;

TEST_SUITE("workloads") {

TEST_CASE("single-layer step shapes") {
  TrainingStep s = autoencoder_step(1, {{2, 3}});
  REQUIRE(s.gemms.size() == 3);
  CHECK(s.gemms[0].phase == Phase::forward);
  CHECK(s.gemms[0].m == 3);
  CHECK(s.gemms[0].n == 2);
  CHECK(s.gemms[0].k == 1);
  CHECK(s.gemms[1].phase == Phase::dgrad);
  CHECK(s.gemms[1].m == 2);
  CHECK(s.gemms[1].n == 3);
  CHECK(s.gemms[1].k == 1);
  CHECK(s.gemms[2].phase == Phase::wgrad);
  CHECK(s.gemms[2].m == 3);
  CHECK(s.gemms[2].n == 1);
  CHECK(s.gemms[2].k == 2);
}

TEST_CASE("every forward GEMM contracts over the batch") {
  TrainingStep s = autoencoder_step(16, default_autoencoder_layers());
  for (const GemmSpec& g : s.gemms) {
    if (g.phase == Phase::forward) CHECK(g.k == 16);
    if (g.phase == Phase::dgrad) CHECK(g.k == 16);
    if (g.phase == Phase::wgrad) CHECK(g.n == 16);
  }
}

TEST_CASE("zero batch is rejected") {
  CHECK_THROWS_AS((void)autoencoder_step(0, default_autoencoder_layers()), Error);
  CHECK_THROWS_AS((void)autoencoder_step(1, {}), Error);
  CHECK_THROWS_AS((void)autoencoder_step(1, {{0, 3}}), Error);
}

TEST_CASE("default stack at B=16 fits the published 184 kB budget") {
  TrainingStep s = autoencoder_step(16, default_autoencoder_layers());
  double kib = static_cast<double>(s.footprint_bytes) / 1024.0;
  CHECK(kib == doctest::Approx(184.0).epsilon(0.15));
}

TEST_CASE("baseline work is batch-proportional") {
  TrainingStep s1 = autoencoder_step(1, default_autoencoder_layers());
  TrainingStep s16 = autoencoder_step(16, default_autoencoder_layers());
  auto macs = [](const TrainingStep& s) {
    uint64_t total = 0;
    for (const GemmSpec& g : s.gemms) total += g.m * g.n * g.k;
    return total;
  };
  CHECK(macs(s16) == 16 * macs(s1));
}

TEST_CASE("bench on a reduced stack: backward weight gradients beat forward at B=1") {
  // Scaled-down stack keeps the unit test fast; the full stack runs in the
  // acceptance suite.
  std::vector<DenseLayer> layers = {{64, 32}, {32, 8}, {8, 32}, {32, 64}};
  BenchResult r = bench(1, layers, kDefaultGeometry, {}, kFreqPeakHz, kPowerPeakMw, 77);
  REQUIRE(r.per_gemm.size() == 12);

  double fwd_macs = 0, fwd_cycles = 0, wgrad_macs = 0, wgrad_cycles = 0;
  for (const auto& g : r.per_gemm) {
    if (g.spec.phase == Phase::forward) {
      fwd_macs += static_cast<double>(g.report.useful_macs);
      fwd_cycles += static_cast<double>(g.report.cycles);
    } else if (g.spec.phase == Phase::wgrad) {
      wgrad_macs += static_cast<double>(g.report.useful_macs);
      wgrad_cycles += static_cast<double>(g.report.cycles);
    }
  }
  // Same MAC count per phase pair, far fewer cycles on the weight
  // gradients: their reduction dimension fills all output slots.
  CHECK(wgrad_macs / wgrad_cycles > fwd_macs / fwd_cycles);
}

TEST_CASE("bench aggregates are self-consistent and deterministic") {
  std::vector<DenseLayer> layers = {{32, 16}, {16, 32}};
  BenchResult a = bench(2, layers, kDefaultGeometry, {}, kFreqPeakHz, kPowerPeakMw, 5);
  BenchResult b = bench(2, layers, kDefaultGeometry, {}, kFreqPeakHz, kPowerPeakMw, 5);
  CHECK(a.total_cycles == b.total_cycles);
  CHECK(a.total_macs == b.total_macs);

  uint64_t cycles = 0, macs = 0;
  for (const auto& g : a.per_gemm) {
    cycles += g.report.cycles;
    macs += g.report.useful_macs;
  }
  CHECK(cycles == a.total_cycles);
  CHECK(macs == a.total_macs);
  CHECK(a.aggregate_macs_per_cycle ==
        doctest::Approx(static_cast<double>(macs) / static_cast<double>(cycles)));
  // With the closed-form baseline the aggregate speedup is the aggregate
  // MAC rate over the baseline rate.
  CHECK(a.aggregate_speedup == doctest::Approx(a.aggregate_macs_per_cycle / 1.44));
}

TEST_CASE("csv and json shapes") {
  CHECK(bench_csv_header() == "phase,layer,M,N,K,cycles,macs_per_cycle,speedup");
  std::vector<DenseLayer> layers = {{8, 8}};
  BenchResult r = bench(1, layers, kDefaultGeometry, {}, kFreqPeakHz, kPowerPeakMw, 9);
  std::string row = bench_csv_row(r.per_gemm[0]);
  CHECK(row.substr(0, 8) == "forward,");
  CHECK(bench_json(r).find("aggregate_speedup") != std::string::npos);
}

}  // TEST_SUITE
