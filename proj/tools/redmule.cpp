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

// redmule: cycle model of a parametric FP16 matrix-multiplication
// accelerator. Subcommands: run (single GEMM with verification and a perf
// report), sweep (area/ports design-space table), bench (autoencoder
// training-step benchmark), fp16 eval (scalar FMA spot checks).
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "redmule/cost.hpp"
#include "redmule/error.hpp"
#include "redmule/golden.hpp"
#include "redmule/matio.hpp"
#include "redmule/perf.hpp"
#include "redmule/randmat.hpp"
#include "redmule/runconfig.hpp"
#include "redmule/tiler.hpp"
#include "redmule/workloads.hpp"

namespace {

using namespace redmule;

struct CommonFlags {
  std::string config_path;
  std::optional<int> h, l, p;
  std::optional<double> freq_hz, power_mw;
  std::optional<int> sw_cores;
  std::optional<double> sw_rate;
  std::optional<std::string> stationarity;
  std::optional<uint64_t> seed;
  std::optional<std::string> format;
  std::optional<std::string> trace;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "Config file (key = value lines)");
  cmd->add_option("--H", f.h, "FMA columns per row");
  cmd->add_option("--L", f.l, "FMA rows");
  cmd->add_option("--P", f.p, "Pipeline registers per FMA");
  cmd->add_option("--freq", f.freq_hz, "Clock frequency in Hz");
  cmd->add_option("--power", f.power_mw, "Cluster power in mW");
  cmd->add_option("--sw-cores", f.sw_cores, "Software baseline core count");
  cmd->add_option("--sw-rate", f.sw_rate, "Software baseline MAC/cycle per core");
  cmd->add_option("--stationarity", f.stationarity, "x_stationary or w_stationary");
  cmd->add_option("--seed", f.seed, "Seed for generated data");
  cmd->add_option("--format", f.format, "Report format: json or csv");
  cmd->add_option("--trace", f.trace, "Trace verbosity: off, summary, per_cycle");
  cmd->add_option("--out", f.out_path, "Write the report to a file instead of stdout");
}

RunConfig resolve_config(const CommonFlags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) cfg = load_config_file(f.config_path, cfg);
  if (f.h) cfg.geometry.h = *f.h;
  if (f.l) cfg.geometry.l = *f.l;
  if (f.p) cfg.geometry.p = *f.p;
  if (f.freq_hz) cfg.frequency_hz = *f.freq_hz;
  if (f.power_mw) cfg.power_mw = *f.power_mw;
  if (f.sw_cores) cfg.baseline.cores = *f.sw_cores;
  if (f.sw_rate) cfg.baseline.macs_per_cycle_per_core = *f.sw_rate;
  if (f.stationarity) cfg.stationarity = parse_stationarity(*f.stationarity);
  if (f.seed) cfg.seed = *f.seed;
  if (f.format) cfg.format = parse_format(*f.format);
  if (f.trace) cfg.trace = parse_trace_verbosity(*f.trace);
  validate(cfg.geometry);
  return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error(Errc::io, "cannot open '" + out_path + "' for writing");
  out << text << '\n';
}

int cmd_run(uint64_t m, uint64_t n, uint64_t k, const CommonFlags& flags,
            const std::string& x_path, const std::string& w_path, const std::string& z_out,
            const std::string& trace_out) {
  RunConfig cfg = resolve_config(flags);

  GemmProblem p;
  if (!x_path.empty() || !w_path.empty()) {
    if (x_path.empty() || w_path.empty()) {
      throw Error(Errc::config, "provide both --x and --w or neither");
    }
    p.x = load_matrix(x_path);
    p.w = load_matrix(w_path);
    if (p.x.rows != m || p.x.cols != n || p.w.rows != n || p.w.cols != k) {
      throw Error(Errc::dimension_mismatch, "matrix files do not match the given dimensions");
    }
  } else {
    SplitMix64 rng(cfg.seed);
    p.x = random_mat(m, n, rng, ValueMix::finite);
    p.w = random_mat(n, k, rng, ValueMix::finite);
  }

  RunOptions opts;
  opts.stationarity = cfg.stationarity;
  opts.record_events = cfg.trace == TraceVerbosity::per_cycle;
  RunResult run = run_gemm(p, cfg.geometry, opts);

  MatF16 want = gemm_padded(p, cfg.geometry);
  if (!(run.z == want)) {
    std::cerr << "verification FAILED: simulated output differs from the reference\n";
    int shown = 0;
    for (size_t r = 0; r < want.rows && shown < 8; ++r) {
      for (size_t c = 0; c < want.cols && shown < 8; ++c) {
        if (run.z.at(r, c) != want.at(r, c)) {
          std::cerr << "  z[" << r << "][" << c << "] = 0x" << std::hex << run.z.at(r, c).bits
                    << " want 0x" << want.at(r, c).bits << std::dec << '\n';
          ++shown;
        }
      }
    }
    return 1;
  }

  if (!z_out.empty()) save_rmat(z_out, run.z);

  if (cfg.trace == TraceVerbosity::per_cycle) {
    std::ofstream tout(trace_out);
    if (!tout) throw Error(Errc::io, "cannot open '" + trace_out + "' for writing");
    run.trace.write_csv(tout);
  } else if (cfg.trace == TraceVerbosity::summary) {
    std::cerr << "cycles=" << run.trace.cycles << " preload=" << run.trace.preload_cycles()
              << " stalls=" << run.trace.stall_cycles << " w_lines=" << run.trace.w_lines
              << " x_lines=" << run.trace.x_lines << " z_lines=" << run.trace.z_lines << '\n';
  }

  PerfReport rep = analyze(run.trace, cfg.geometry, cfg.frequency_hz, cfg.power_mw, cfg.baseline);
  if (cfg.format == OutputFormat::csv) {
    emit(report_csv_header() + "\n" + report_csv_row(rep), flags.out_path);
  } else {
    emit(report_json(rep), flags.out_path);
  }
  return 0;
}

IntRange parse_range(const std::string& text) {
  size_t colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw Error(Errc::config, "bad range '" + text + "', expected lo:hi");
  }
}

int cmd_sweep(const std::string& h_range, const std::string& l_range, const CommonFlags& flags,
              const std::string& probe) {
  RunConfig cfg = resolve_config(flags);
  auto rows = sweep(parse_range(h_range), parse_range(l_range), cfg.geometry.p, cfg.area);

  uint64_t pm = 0, pn = 0, pk = 0;
  if (!probe.empty()) {
    if (std::sscanf(probe.c_str(), "%zux%zux%zu", &pm, &pn, &pk) != 3 || pm == 0 || pn == 0 ||
        pk == 0) {
      throw Error(Errc::config, "bad probe shape '" + probe + "', expected MxNxK");
    }
  }

  std::ostringstream out;
  out << sweep_csv_header();
  if (!probe.empty()) out << ",probe_utilization";
  out << '\n';
  for (const SweepRow& r : rows) {
    out << sweep_csv_row(r);
    if (!probe.empty()) {
      Geometry g{r.h, r.l, cfg.geometry.p};
      SplitMix64 rng(cfg.seed);
      GemmProblem p;
      p.x = random_mat(pm, pn, rng, ValueMix::finite);
      p.w = random_mat(pn, pk, rng, ValueMix::finite);
      RunResult run = run_gemm(p, g);
      double util = run.trace.cycles == 0 ? 0.0
                                          : static_cast<double>(run.trace.useful_macs) /
                                                (static_cast<double>(run.trace.cycles) *
                                                 g.fma_count());
      char buf[32];
      std::snprintf(buf, sizeof(buf), ",%.6g", util);
      out << buf;
    }
    out << '\n';
  }
  std::string text = out.str();
  if (!text.empty() && text.back() == '\n') text.pop_back();
  emit(text, flags.out_path);
  return 0;
}

int cmd_bench(uint64_t batch, const CommonFlags& flags, const std::string& layers_arg) {
  RunConfig cfg = resolve_config(flags);

  std::vector<DenseLayer> layers;
  if (layers_arg.empty()) {
    layers = default_autoencoder_layers();
  } else {
    std::vector<uint64_t> dims;
    std::stringstream ss(layers_arg);
    std::string field;
    while (std::getline(ss, field, ',')) {
      try {
        dims.push_back(std::stoull(field));
      } catch (const std::exception&) {
        throw Error(Errc::config, "bad layer dimension '" + field + "'");
      }
    }
    if (dims.size() < 2) throw Error(Errc::config, "--layers needs at least two dimensions");
    for (size_t i = 0; i + 1 < dims.size(); ++i) layers.push_back({dims[i], dims[i + 1]});
  }

  BenchResult r = bench(batch, layers, cfg.geometry, cfg.baseline, cfg.frequency_hz, cfg.power_mw,
                        cfg.seed);

  std::ostringstream out;
  out << bench_csv_header() << '\n';
  for (const auto& g : r.per_gemm) out << bench_csv_row(g) << '\n';
  out << '\n' << bench_json(r);
  emit(out.str(), flags.out_path);
  return 0;
}

int cmd_fp16_eval(const std::string& a, const std::string& b, const std::string& c) {
  F16 r = fma(from_literal(a), from_literal(b), from_literal(c));
  char buf[8];
  std::snprintf(buf, sizeof(buf), "0x%04X", r.bits);
  std::cout << buf << ' ' << to_exact_decimal(r) << '\n';
  return 0;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case Errc::verification:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle model of a parametric FP16 matrix-multiplication accelerator"};
  app.require_subcommand(1);

  CommonFlags flags;

  // run M N K
  auto* run = app.add_subcommand("run", "Simulate one GEMM, verify it, report performance");
  uint64_t m = 0, n = 0, k = 0;
  std::string x_path, w_path, z_out, trace_out = "trace.csv";
  run->add_option("M", m, "Output rows")->required();
  run->add_option("N", n, "Reduction length")->required();
  run->add_option("K", k, "Output columns")->required();
  run->add_option("--x", x_path, "X matrix file (RMAT or .csv)");
  run->add_option("--w", w_path, "W matrix file (RMAT or .csv)");
  run->add_option("--z-out", z_out, "Write the result matrix (RMAT)");
  run->add_option("--trace-out", trace_out, "Per-cycle trace CSV path");
  add_common(run, flags);

  // sweep
  auto* sw = app.add_subcommand("sweep", "Area/port design-space table over H and L");
  std::string h_range, l_range, probe;
  sw->add_option("--h-range", h_range, "H range lo:hi")->required();
  sw->add_option("--l-range", l_range, "L range lo:hi")->required();
  sw->add_option("--probe", probe, "Measure utilization on a probe GEMM, shape MxNxK");
  add_common(sw, flags);

  // bench B
  auto* be = app.add_subcommand("bench", "Autoencoder training-step benchmark");
  uint64_t batch = 0;
  std::string layers_arg;
  be->add_option("B", batch, "Batch size")->required();
  be->add_option("--layers", layers_arg, "Layer widths, e.g. 640,128,8,128,640");
  add_common(be, flags);

  // fp16 eval a b c
  auto* fp = app.add_subcommand("fp16", "Scalar binary16 helpers");
  auto* ev = fp->add_subcommand("eval", "Print fma(a, b, c) as bits and exact decimal");
  std::string ea, eb, ec;
  ev->add_option("a", ea)->required();
  ev->add_option("b", eb)->required();
  ev->add_option("c", ec)->required();
  fp->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Keep CLI11's message, pin the exit code contract.
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(m, n, k, flags, x_path, w_path, z_out, trace_out);
    if (sw->parsed()) return cmd_sweep(h_range, l_range, flags, probe);
    if (be->parsed()) return cmd_bench(batch, flags, layers_arg);
    if (fp->parsed()) return cmd_fp16_eval(ea, eb, ec);
  } catch (const redmule::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
