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

#include <cstdio>
#include <fstream>
#include <string>

#include "redmule/config.hpp"
#include "redmule/error.hpp"
#include "redmule/runconfig.hpp"

using namespace redmule;

TEST_SUITE("config") {

TEST_CASE("line elements per memory line") {
  CHECK(Geometry{4, 8, 3}.line_elems() == 16);
  CHECK(Geometry{1, 1, 0}.line_elems() == 1);
  CHECK(Geometry{5, 8, 3}.line_elems() == 20);
}

TEST_CASE("required ports include the alignment spare") {
  CHECK(Geometry{4, 8, 3}.required_ports() == 9);
  CHECK(Geometry{5, 8, 3}.required_ports() == 11);
  CHECK(Geometry{1, 1, 0}.required_ports() == 2);
}

TEST_CASE("default design point") {
  CHECK(kDefaultGeometry.fma_count() == 32);
  CHECK(kDefaultGeometry.line_elems() == 16);
  CHECK(kDefaultGeometry.required_ports() == 9);
}

TEST_CASE("widening H from 4 to 5 costs exactly two ports") {
  CHECK(Geometry{5, 8, 3}.required_ports() - Geometry{4, 8, 3}.required_ports() == 2);
}

TEST_CASE("validation") {
  CHECK(validate(Geometry{4, 8, 3}).fma_count() == 32);
  CHECK(validate(Geometry{16, 32, 3}).fma_count() == 512);
  CHECK_THROWS_WITH_AS(validate(Geometry{0, 8, 3}), doctest::Contains("H"), Error);
  CHECK_THROWS_WITH_AS(validate(Geometry{4, 0, 3}), doctest::Contains("L"), Error);
  CHECK_THROWS_WITH_AS(validate(Geometry{4, 8, -1}), doctest::Contains("P"), Error);
}

TEST_CASE("line and port counts are monotone in H and P") {
  for (int h = 1; h <= 8; ++h) {
    for (int p = 0; p <= 4; ++p) {
      Geometry g{h, 4, p};
      Geometry gh{h + 1, 4, p};
      Geometry gp{h, 4, p + 1};
      CHECK(gh.line_elems() >= g.line_elems());
      CHECK(gp.line_elems() >= g.line_elems());
      CHECK(gh.required_ports() >= g.required_ports());
      CHECK(gp.required_ports() >= g.required_ports());
    }
  }
}

namespace {

RunConfig load_text(const std::string& text) {
  std::string path = "/tmp/redmule_runconfig_test.cfg";
  {
    std::ofstream out(path);
    out << text;
  }
  RunConfig cfg = load_config_file(path, RunConfig{});
  std::remove(path.c_str());
  return cfg;
}

void expect_config_error(const std::string& text) {
  std::string path = "/tmp/redmule_runconfig_test.cfg";
  {
    std::ofstream out(path);
    out << text;
  }
  CHECK_THROWS_AS((void)load_config_file(path, RunConfig{}), Error);
  std::remove(path.c_str());
}

}  // namespace

TEST_CASE("config file keys override the defaults") {
  RunConfig cfg = load_text(
      "# comment\n"
      "H = 5\nL = 16\nP = 2\n"
      "frequency_hz = 476e6\npower_mw = 43.5\n"
      "sw_cores = 4\nsw_macs_per_cycle_per_core = 0.25\n"
      "stationarity = w_stationary\nseed = 99\n"
      "area_fixed_mm2 = 0.01\narea_per_fma_mm2 = 0.002\n"
      "format = csv\ntrace = summary\nrounding = rne\n");
  CHECK(cfg.geometry.h == 5);
  CHECK(cfg.geometry.l == 16);
  CHECK(cfg.geometry.p == 2);
  CHECK(cfg.frequency_hz == 476e6);
  CHECK(cfg.power_mw == 43.5);
  CHECK(cfg.baseline.cores == 4);
  CHECK(cfg.baseline.macs_per_cycle_per_core == 0.25);
  CHECK(cfg.stationarity == Stationarity::w_stationary);
  CHECK(cfg.seed == 99);
  CHECK(cfg.area.fixed_mm2 == 0.01);
  CHECK(cfg.area.per_fma_mm2 == 0.002);
  CHECK(cfg.format == OutputFormat::csv);
  CHECK(cfg.trace == TraceVerbosity::summary);
}

TEST_CASE("unknown keys, bad values and other rounding modes are rejected") {
  expect_config_error("bogus = 1\n");
  expect_config_error("H = four\n");
  expect_config_error("rounding = toward_zero\n");
  expect_config_error("stationarity = diagonal\n");
  expect_config_error("just a line without equals\n");
}

}  // TEST_SUITE
