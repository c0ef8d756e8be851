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

#include "redmule/runconfig.hpp"

#include <fstream>
#include <sstream>

#include "redmule/error.hpp"

namespace redmule {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    int r = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw Error(Errc::config, "config: bad integer for " + key + ": '" + v + "'");
  }
}

uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    uint64_t r = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw Error(Errc::config, "config: bad integer for " + key + ": '" + v + "'");
  }
}

double parse_f64(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw Error(Errc::config, "config: bad number for " + key + ": '" + v + "'");
  }
}

}  // namespace

Stationarity parse_stationarity(const std::string& text) {
  if (text == "x_stationary" || text == "x") return Stationarity::x_stationary;
  if (text == "w_stationary" || text == "w") return Stationarity::w_stationary;
  throw Error(Errc::config, "config: unknown stationarity '" + text + "'");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  throw Error(Errc::config, "config: unknown format '" + text + "'");
}

TraceVerbosity parse_trace_verbosity(const std::string& text) {
  if (text == "off") return TraceVerbosity::off;
  if (text == "summary") return TraceVerbosity::summary;
  if (text == "per_cycle") return TraceVerbosity::per_cycle;
  throw Error(Errc::config, "config: unknown trace verbosity '" + text + "'");
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::config, "cannot open config file '" + path + "'");

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::config,
                  "config: expected 'key = value' at " + path + ":" + std::to_string(lineno));
    }
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key == "H") {
      base.geometry.h = parse_int(key, val);
    } else if (key == "L") {
      base.geometry.l = parse_int(key, val);
    } else if (key == "P") {
      base.geometry.p = parse_int(key, val);
    } else if (key == "frequency_hz") {
      base.frequency_hz = parse_f64(key, val);
    } else if (key == "power_mw") {
      base.power_mw = parse_f64(key, val);
    } else if (key == "sw_cores") {
      base.baseline.cores = parse_int(key, val);
    } else if (key == "sw_macs_per_cycle_per_core") {
      base.baseline.macs_per_cycle_per_core = parse_f64(key, val);
    } else if (key == "stationarity") {
      base.stationarity = parse_stationarity(val);
    } else if (key == "seed") {
      base.seed = parse_u64(key, val);
    } else if (key == "area_fixed_mm2") {
      base.area.fixed_mm2 = parse_f64(key, val);
    } else if (key == "area_per_fma_mm2") {
      base.area.per_fma_mm2 = parse_f64(key, val);
    } else if (key == "rounding") {
      if (val != "rne" && val != "nearest_even") {
        throw Error(Errc::config, "config: only round-to-nearest-even is supported, got '" + val + "'");
      }
      base.rounding = RoundingMode::nearest_even;
    } else if (key == "format") {
      base.format = parse_format(val);
    } else if (key == "trace") {
      base.trace = parse_trace_verbosity(val);
    } else {
      throw Error(Errc::config, "config: unknown key '" + key + "'");
    }
  }
  return base;
}

}  // namespace redmule
