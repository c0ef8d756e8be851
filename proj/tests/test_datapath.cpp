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

#include "redmule/datapath.hpp"
#include "redmule/golden.hpp"
#include "redmule/randmat.hpp"
#include "redmule/tiler.hpp"
#include "rng_util.hpp"

using namespace redmule;

namespace {

GemmProblem random_problem(size_t m, size_t n, size_t k, uint64_t seed, ValueMix mix) {
  SplitMix64 rng(seed);
  GemmProblem p;
  p.x = random_mat(m, n, rng, mix);
  p.w = random_mat(n, k, rng, mix);
  return p;
}

}  // namespace

TEST_SUITE("datapath") {

TEST_CASE("raw step interface on a single unpipelined FMA") {
  // H=1, L=1, P=0: one slot in flight, ring latency one cycle.
  Geometry g{1, 1, 0};
  CycleTrace trace;
  trace.geometry = g;
  std::vector<TileDesc> tiles = {{1, 1, 1, 1, 0, 0}};
  Datapath dp(g, tiles, trace);

  auto tick = [&](const Feeds& f) {
    StepResult r = dp.step(f);
    trace.cycles += 1;
    return r;
  };

  // Nothing delivered yet: the due issue cannot proceed.
  CHECK(tick({}).stalled);
  CHECK_FALSE(dp.compute_started());
  CHECK(dp.busy_macs() == 0);

  // Deliveries land at end of cycle (one-cycle port latency), so the
  // cycle that carries them still stalls.
  Feeds fx;
  fx.x = XDelivery{0, 0, 0, 1, 0, {F16::from_bits(0x3c01)}};
  CHECK(tick(fx).stalled);
  Feeds fw;
  fw.w = WDelivery{0, 0, 0, {F16::from_bits(0x3c01)}};
  CHECK(tick(fw).stalled);

  // Issue cycle: the slot enters the pipe, nothing completes yet.
  StepResult issue = tick({});
  CHECK_FALSE(issue.stalled);
  CHECK(issue.useful_completions == 0);
  CHECK(dp.compute_started());
  CHECK(dp.issue_steps() == 1);

  // Completion cycle: one useful MAC, the Z line closes.
  StepResult done_step = tick({});
  CHECK(done_step.useful_completions == 1);
  CHECK(dp.busy_macs() == 1);
  CHECK(dp.z_pending() == 1);

  // Drain it: (1+2^-10)^2 rounds to 0x3c02 in one rounding.
  Feeds fz;
  fz.drain_grant = true;
  StepResult drained = tick(fz);
  REQUIRE(drained.drained.has_value());
  CHECK(drained.drained->values[0] == F16::from_bits(0x3c02));
  CHECK(dp.done());
  CHECK(trace.useful_macs == 1);
}

TEST_CASE("first outputs appear one FMA latency after compute start") {
  Geometry g = kDefaultGeometry;
  auto p = random_problem(8, 16, 16, 21, ValueMix::finite);
  RunResult r = run_gemm(p, g);
  REQUIRE(r.trace.compute_start_cycle >= 0);
  CHECK(r.trace.first_completion_cycle - r.trace.compute_start_cycle == g.p + 1);
}

TEST_CASE("steady-state tile: 2048 MACs across 64 issue cycles") {
  Geometry g = kDefaultGeometry;
  auto p = random_problem(8, 16, 16, 22, ValueMix::finite);
  RunResult r = run_gemm(p, g);
  CHECK(r.trace.useful_macs == 2048);
  CHECK(r.trace.stall_cycles == 0);
  CHECK(r.trace.launch_steps == 64);
  // Gapless issue: the launch window is exactly launch_steps cycles wide.
  CHECK(r.trace.last_launch_cycle - r.trace.compute_start_cycle + 1 == 64);
  // 32 MAC/cycle across the issue window.
  CHECK(r.trace.useful_macs / 64 == 32);
  // Preload is the X band plus the first W line, then fill/drain tails.
  CHECK(r.trace.preload_cycles() == 9);
  CHECK(r.trace.cycles < 64 + 9 + 40);
}

TEST_CASE("X operands are held for exactly h*(p+1) cycles in stall-free steady state") {
  Geometry g = kDefaultGeometry;
  auto p = random_problem(16, 32, 32, 23, ValueMix::finite);
  RunResult r = run_gemm(p, g);
  REQUIRE(r.trace.stall_cycles == 0);
  REQUIRE_FALSE(r.trace.x_hold_hist.empty());
  for (const auto& [gap, count] : r.trace.x_hold_hist) {
    CHECK(gap == static_cast<uint64_t>(g.x_hold_cycles()));
  }
}

TEST_CASE("K=1 keeps at most one of line_elems output slots useful") {
  Geometry g = kDefaultGeometry;
  auto p = random_problem(8, 16, 1, 24, ValueMix::finite);
  RunResult r = run_gemm(p, g);
  CHECK(r.z == gemm_padded(p, g));
  // 1 useful k slot of 16 -> 1/16 of the completions are useful.
  CHECK(static_cast<double>(r.trace.useful_macs) <=
        static_cast<double>(r.trace.total_completions) / 16.0 + 1e-9);
  double utilization = static_cast<double>(r.trace.useful_macs) /
                       (static_cast<double>(r.trace.cycles) * g.fma_count());
  CHECK(utilization <= 0.08);
}

TEST_CASE("MAC conservation: every useful MAC happens exactly once") {
  Geometry g = kDefaultGeometry;
  Rng rng(25);
  for (int rep = 0; rep < 20; ++rep) {
    size_t m = 1 + rng.below(30), n = 1 + rng.below(30), k = 1 + rng.below(30);
    auto p = random_problem(m, n, k, 100 + rep, ValueMix::finite);
    RunResult r = run_gemm(p, g);
    CHECK(r.trace.useful_macs == static_cast<uint64_t>(m) * n * k);
  }
}

TEST_CASE("bit exactness against the padded reference, random shapes and values") {
  Geometry g = kDefaultGeometry;
  Rng rng(26);
  for (int rep = 0; rep < 100; ++rep) {
    size_t m = 1 + rng.below(48), n = 1 + rng.below(48), k = 1 + rng.below(48);
    auto p = random_problem(m, n, k, 200 + rep, ValueMix::finite_and_inf);
    RunResult r = run_gemm(p, g);
    MatF16 want = gemm_padded(p, g);
    if (!(r.z == want)) {
      FAIL("mismatch at shape ", m, "x", n, "x", k);
    }
  }
}

TEST_CASE("bit exactness on non-default geometries") {
  Rng rng(27);
  for (Geometry g : {Geometry{1, 1, 0}, Geometry{2, 3, 1}, Geometry{3, 2, 2}, Geometry{8, 4, 0}}) {
    for (int rep = 0; rep < 15; ++rep) {
      size_t m = 1 + rng.below(20), n = 1 + rng.below(20), k = 1 + rng.below(20);
      auto p = random_problem(m, n, k, 300 + rep, ValueMix::finite_and_inf);
      RunResult r = run_gemm(p, g);
      MatF16 want = gemm_padded(p, g);
      if (!(r.z == want)) {
        FAIL("mismatch at shape ", m, "x", n, "x", k, " geometry ", g.h, "/", g.l, "/", g.p);
      }
    }
  }
}

TEST_CASE("large-array geometry runs and stays exact") {
  Geometry g{16, 32, 3};  // 512 FMAs, 64-element lines
  auto p = random_problem(64, 128, 128, 28, ValueMix::finite);
  RunResult r = run_gemm(p, g);
  CHECK(r.z == gemm_padded(p, g));
  CHECK(r.trace.useful_macs == 64ull * 128 * 128);
}

TEST_CASE("identical inputs give identical traces and outputs") {
  Geometry g = kDefaultGeometry;
  auto p = random_problem(13, 21, 17, 29, ValueMix::finite_and_inf);
  RunResult a = run_gemm(p, g);
  RunResult b = run_gemm(p, g);
  CHECK(a.z == b.z);
  CHECK(a.trace.cycles == b.trace.cycles);
  CHECK(a.trace.useful_macs == b.trace.useful_macs);
  CHECK(a.trace.stall_cycles == b.trace.stall_cycles);
  CHECK(a.trace.w_lines == b.trace.w_lines);
  CHECK(a.trace.x_lines == b.trace.x_lines);
  CHECK(a.trace.z_lines == b.trace.z_lines);
}

TEST_CASE("bandwidth-starved geometry stalls deterministically but stays exact") {
  // One element per line: W and X both want the port every cycle.
  Geometry g{1, 1, 0};
  auto p = random_problem(3, 7, 2, 30, ValueMix::finite);
  RunResult r = run_gemm(p, g);
  CHECK(r.z == gemm_padded(p, g));
  CHECK(r.trace.stall_cycles > 0);
  RunResult r2 = run_gemm(p, g);
  CHECK(r2.trace.stall_cycles == r.trace.stall_cycles);
}

}  // TEST_SUITE
