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

#include <map>

#include "redmule/randmat.hpp"
#include "redmule/streamer.hpp"
#include "redmule/tiler.hpp"

using namespace redmule;

namespace {

GemmProblem random_problem(size_t m, size_t n, size_t k, uint64_t seed) {
  SplitMix64 rng(seed);
  GemmProblem p;
  p.x = random_mat(m, n, rng, ValueMix::finite);
  p.w = random_mat(n, k, rng, ValueMix::finite);
  return p;
}

RunResult run_traced(size_t m, size_t n, size_t k, uint64_t seed) {
  RunOptions opts;
  opts.record_events = true;
  return run_gemm(random_problem(m, n, k, seed), kDefaultGeometry, opts);
}

}  // namespace

TEST_SUITE("streamer") {

TEST_CASE("slot policy priorities") {
  CHECK(plan_cycle({true, 5, 2}) == PortOp::w_load);   // W cadence is never preempted
  CHECK(plan_cycle({true, 0, 0}) == PortOp::w_load);
  CHECK(plan_cycle({false, 5, 2}) == PortOp::z_store);  // drain beats refill
  CHECK(plan_cycle({false, 5, 0}) == PortOp::x_load);
  CHECK(plan_cycle({false, 0, 0}) == PortOp::idle);
}

TEST_CASE("port exclusivity: at most one transaction per cycle in every trace") {
  for (uint64_t seed = 40; seed < 44; ++seed) {
    RunResult r = run_traced(11 + seed, 17, 23, seed);
    std::map<uint64_t, int> per_cycle;
    for (const auto& e : r.trace.events) {
      if (e.kind == EventKind::w_load || e.kind == EventKind::x_load ||
          e.kind == EventKind::z_store) {
        per_cycle[e.cycle] += 1;
      }
    }
    for (const auto& [cycle, count] : per_cycle) CHECK(count == 1);
  }
}

TEST_CASE("steady-state W cadence is exactly p+1 cycles") {
  RunResult r = run_traced(16, 32, 32, 50);
  REQUIRE(r.trace.stall_cycles == 0);
  REQUIRE_FALSE(r.trace.w_gap_hist.empty());
  for (const auto& [gap, count] : r.trace.w_gap_hist) {
    CHECK(gap == static_cast<uint64_t>(kDefaultGeometry.p + 1));
  }
}

TEST_CASE("W gaps stay multiples of p+1 when the reduction is padded") {
  RunResult r = run_traced(8, 5, 16, 51);  // N=5 pads to 8: some lines skipped
  for (const auto& [gap, count] : r.trace.w_gap_hist) {
    CHECK(gap % static_cast<uint64_t>(kDefaultGeometry.p + 1) == 0);
  }
}

TEST_CASE("traffic totals for the unit tile") {
  RunResult r = run_traced(8, 16, 16, 52);
  TrafficTotals t = traffic_totals(r.trace);
  CHECK(t.w_lines == 16);
  CHECK(t.x_lines == 8);
  CHECK(t.z_lines == 8);
}

TEST_CASE("doubling K doubles W and Z lines, X reused across k-tiles") {
  RunResult a = run_traced(8, 16, 16, 53);
  RunResult b = run_traced(8, 16, 32, 53);
  CHECK(traffic_totals(b.trace).w_lines == 2 * traffic_totals(a.trace).w_lines);
  CHECK(traffic_totals(b.trace).z_lines == 2 * traffic_totals(a.trace).z_lines);
  CHECK(traffic_totals(b.trace).x_lines == traffic_totals(a.trace).x_lines);
}

TEST_CASE("empty trace counts nothing") {
  CycleTrace t;
  TrafficTotals tt = traffic_totals(t);
  CHECK(tt.w_lines == 0);
  CHECK(tt.x_lines == 0);
  CHECK(tt.z_lines == 0);
  CHECK(tt.idle_cycles == 0);
}

TEST_CASE("bytes moved match element accounting") {
  // Aligned, single-chunk shapes: X loaded once per band, W re-read per
  // band, Z written once.
  const Geometry g = kDefaultGeometry;
  for (auto [m, n, k] : {std::tuple<size_t, size_t, size_t>{8, 16, 16},
                         {16, 16, 32},
                         {24, 16, 16}}) {
    RunResult r = run_gemm(random_problem(m, n, k, 54), g);
    uint64_t m_tiles = (m + g.l - 1) / g.l;
    uint64_t want = (m * n                 // X once per band
                     + n * k * m_tiles     // W per band
                     + m * k) *            // Z once
                    2;
    CHECK(r.trace.bytes_moved == want);
  }
}

TEST_CASE("schedule sustains the array without stalls in the peak region") {
  for (auto [m, n, k] : {std::tuple<size_t, size_t, size_t>{16, 16, 16},
                         {8, 48, 32},
                         {24, 20, 40},
                         {32, 64, 16}}) {
    RunResult r = run_gemm(random_problem(m, n, k, 55), kDefaultGeometry);
    CHECK(r.trace.stall_cycles == 0);
  }
}

}  // TEST_SUITE
