// Copyright 2026 The obfrank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "obfrank/analytic.hpp"
#include "obfrank/cli.hpp"
#include "obfrank/montecarlo.hpp"
#include "obfrank/region.hpp"

#ifndef OBFRANK_VERSION
#define OBFRANK_VERSION "0.0.0"
#endif

namespace obfrank::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct CommonOptions {
  std::string config_path;
  std::string model;
  std::string out_path;
  int threads = 0;
};

int effective_threads(int requested) {
  if (requested > 0) return requested;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

RunConfig load_checked(const CommonOptions& opts) {
  RunConfig cfg = load_config(opts.config_path);
  if (!opts.model.empty()) cfg.model = parse_model(opts.model);
  const auto violations = validate(system_for(cfg));
  if (!violations.empty()) {
    std::string msg = "config: invalid scenario";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw ConfigError(msg);
  }
  return cfg;
}

std::string metadata(const std::string& command, const RunConfig& cfg) {
  std::ostringstream os;
  os << "# command=" << command << '\n'
     << "# version=" << OBFRANK_VERSION << '\n'
     << "# config_digest=" << config_digest(cfg) << '\n'
     << "# model=" << model_name(cfg.model) << '\n'
     << "# seed=" << cfg.seed << '\n';
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("--out: cannot write '" + path + "'");
  f << content;
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const RunConfig& cfg, Clock::time_point started) {
  const double seconds = std::chrono::duration<double>(Clock::now() - started).count();
  const nlohmann::json manifest = {
      {"command", command},
      {"config_digest", config_digest(cfg)},
      {"seed", cfg.seed},
      {"version", OBFRANK_VERSION},
      {"outputs", nlohmann::json::array({out_path})},
      {"wall_clock_seconds", seconds},
  };
  write_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
}

// Emits the CSV to --out (plus manifest) or to stdout.
void emit(const CommonOptions& opts, const std::string& command, const RunConfig& cfg,
          const std::string& csv, Clock::time_point started, std::ostream& out) {
  if (opts.out_path.empty()) {
    out << csv;
    return;
  }
  write_file(opts.out_path, csv);
  write_manifest(opts.out_path, command, cfg, started);
  out << "wrote " << opts.out_path << '\n';
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size())
      throw ConfigError(std::string(flag) + ": expected comma-separated numbers, got '" + text + "'");
    values.push_back(v);
  }
  if (values.empty()) throw ConfigError(std::string(flag) + ": empty list");
  return values;
}

// Outage binding at the returned rank, evaluated the way the rank was solved.
double binding_outage(const SystemConfig& sys, const RunConfig& cfg, double rank,
                      std::optional<double> other_rank) {
  const int cells = cell_count(sys.geometry);
  if (cells == 1) return outage_for(sys, std::vector<double>{rank}, 0).value;
  if (other_rank) return outage_for(sys, std::vector<double>{rank, *other_rank}, 0).value;
  const std::vector<double> ranks{rank, rank};
  return std::max(outage_for(sys, ranks, 0, cfg.solver.omega_tol).value,
                  outage_for(sys, ranks, 1, cfg.solver.omega_tol).value);
}

int cmd_max_rank(const CommonOptions& opts, std::optional<double> other_rank, std::ostream& out) {
  const auto started = Clock::now();
  const RunConfig cfg = load_checked(opts);
  const SystemConfig sys = system_for(cfg);
  SolverOptions solver = cfg.solver;
  solver.threads = effective_threads(opts.threads);

  MaxRank r;
  if (other_rank) {
    if (cfg.model != Model::kWyner) throw ConfigError("--l-other: only the wyner model has it");
    if (!(*other_rank >= 1.0)) throw ConfigError("--l-other: must be at least 1");
    r = max_rank_wyner(cfg.qos, *other_rank, cfg.cross_gain, cfg.noise_power, cfg.users);
  } else {
    r = max_rank_for(sys, solver);
  }
  if (!r.feasible()) {
    out << "infeasible at L=1\n";
    return kExitInfeasible;
  }
  const double outage = binding_outage(sys, cfg, *r.relaxed, other_rank);

  std::ostringstream csv;
  csv << metadata("max-rank", cfg) << "model,method,l_relaxed,l_integer,outage\n"
      << model_name(cfg.model) << ',' << r.method << ',' << format_number(*r.relaxed) << ','
      << r.integer(cfg.antennas) << ',' << format_number(outage) << '\n';

  out << "model      " << model_name(cfg.model) << '\n'
      << "method     " << r.method << '\n'
      << "l_relaxed  " << format_number(*r.relaxed) << '\n'
      << "l_integer  " << r.integer(cfg.antennas) << '\n'
      << "outage     " << format_number(outage) << '\n';
  if (!opts.out_path.empty()) {
    write_file(opts.out_path, csv.str());
    write_manifest(opts.out_path, "max-rank", cfg, started);
  }
  return kExitOk;
}

int cmd_region(const CommonOptions& opts, const std::string& grid_spec, std::ostream& out) {
  const auto started = Clock::now();
  const RunConfig cfg = load_checked(opts);
  if (cfg.model != Model::kWyner && cfg.model != Model::kTwoCellHeterogeneous)
    throw ConfigError("model: region sweeps need 'wyner' or 'two-hetero'");
  const std::vector<double> grid = parse_grid(grid_spec);
  SolverOptions solver = cfg.solver;
  solver.threads = effective_threads(opts.threads);
  const RegionBoundary boundary = boundary_for(system_for(cfg), grid, solver);

  std::ostringstream csv;
  csv << metadata("region", cfg) << "# grid=" << grid_spec << '\n'
      << "# diagonal_corner="
      << (boundary.diagonal_corner ? format_number(*boundary.diagonal_corner) : "none") << '\n'
      << "l1,l2_max\n";
  for (const auto& s : boundary.samples)
    if (s.l2_max) csv << format_number(s.l1) << ',' << format_number(*s.l2_max) << '\n';
  emit(opts, "region", cfg, csv.str(), started, out);
  return boundary.empty() ? kExitInfeasible : kExitOk;
}

int cmd_validate(const CommonOptions& opts, const std::string& ranks_text,
                 std::optional<std::int64_t> trials, std::optional<std::uint64_t> seed,
                 double noise_scale, std::ostream& out) {
  const auto started = Clock::now();
  RunConfig cfg = load_checked(opts);
  if (trials) cfg.trials = *trials;
  if (seed) cfg.seed = *seed;
  if (cfg.trials < 1) throw ConfigError("--trials: must be positive");
  const SystemConfig sys = system_for(cfg);
  const int cells = cell_count(sys.geometry);

  const std::vector<double> relaxed = parse_list(ranks_text, "--ranks");
  if (static_cast<int>(relaxed.size()) != cells)
    throw ConfigError("--ranks: expected " + std::to_string(cells) + " values");
  std::optional<RankTuple> ranks;
  try {
    ranks.emplace(relaxed, cfg.antennas);
  } catch (const std::domain_error&) {
    throw ConfigError("--ranks: every rank must be at least 1");
  }
  const std::vector<double> used(ranks->integer().begin(), ranks->integer().end());

  TrialConfig tc = TrialConfig::from_ranks(sys, *ranks, cfg.trials, cfg.seed);
  tc.noise_scale = noise_scale;
  const OutageEstimate est = estimate_outage(tc, cfg.qos.eta, effective_threads(opts.threads));

  const bool analytic_available =
      !(cfg.model == Model::kTwoCellHeterogeneous && cells != 2);
  std::ostringstream csv;
  csv << metadata("validate", cfg) << "# trials=" << cfg.trials << '\n' << "# ranks=";
  for (std::size_t i = 0; i < used.size(); ++i) csv << (i ? "," : "") << ranks->integer()[i];
  csv << '\n' << "quantity,analytic,mc,se,z\n";

  bool failed = false;
  const auto n = static_cast<double>(cfg.trials);
  for (int i = 0; i < cells; ++i) {
    const double mc = est.per_cell[static_cast<std::size_t>(i)].p_hat;
    double analytic = std::numeric_limits<double>::quiet_NaN();
    double se = est.per_cell[static_cast<std::size_t>(i)].std_err;
    double z = std::numeric_limits<double>::quiet_NaN();
    if (analytic_available) {
      analytic = outage_for(sys, used, i, cfg.solver.omega_tol).value;
      // Standard error under the analytic value as the null hypothesis.
      se = std::sqrt(analytic * (1.0 - analytic) / n);
      if (se > 0.0)
        z = (mc - analytic) / se;
      else
        z = (mc == analytic) ? 0.0 : std::numeric_limits<double>::infinity();
      if (std::abs(z) > 4.0) failed = true;
    }
    csv << "outage_cell" << (i + 1) << ',' << format_number(analytic) << ','
        << format_number(mc) << ',' << format_number(se) << ',' << format_number(z) << '\n';
  }
  emit(opts, "validate", cfg, csv.str(), started, out);
  return failed ? kExitValidationFailure : kExitOk;
}

void apply_sweep_value(RunConfig& cfg, const std::string& vary, double value) {
  if (vary == "K") {
    if (value != std::floor(value) || value < 1) throw ConfigError("--values: K must be a positive integer");
    cfg.users = static_cast<int>(value);
  } else if (vary == "snr") {
    cfg.noise_power = std::pow(10.0, -value / 10.0);
  } else if (vary == "D") {
    cfg.cell_size = value;
    cfg.bs_x.reset();
  } else if (vary == "eta") {
    cfg.qos.eta = value;
  } else if (vary == "p") {
    cfg.qos.p = value;
  } else if (vary == "g") {
    cfg.cross_gain = value;
  } else if (vary == "alpha") {
    cfg.alpha = value;
  } else {
    throw ConfigError("--vary: unknown parameter '" + vary + "' (K, snr, D, eta, p, g, alpha)");
  }
}

int cmd_sweep(const CommonOptions& opts, const std::string& vary, const std::string& values_text,
              std::ostream& out) {
  const auto started = Clock::now();
  CommonOptions base_opts = opts;
  std::vector<Model> models;
  if (!opts.model.empty()) {
    std::stringstream ss(opts.model);
    std::string item;
    while (std::getline(ss, item, ',')) models.push_back(parse_model(item));
    base_opts.model.clear();
  }
  const RunConfig base = load_checked(base_opts);
  if (models.empty()) models.push_back(base.model);
  const std::vector<double> values = parse_list(values_text, "--values");
  // Reject an unknown parameter before any solving.
  RunConfig probe = base;
  apply_sweep_value(probe, vary, values.front());

  std::ostringstream csv;
  csv << metadata("sweep", base) << "# vary=" << vary << '\n'
      << "vary,value,model,method,l_relaxed,l_integer\n";
  for (double v : values) {
    for (Model m : models) {
      RunConfig cfg = base;
      cfg.model = m;
      apply_sweep_value(cfg, vary, v);
      const SystemConfig sys = system_for(cfg);
      const auto violations = validate(sys);
      if (!violations.empty())
        throw ConfigError("--values: " + vary + "=" + format_number(v) + " gives an invalid scenario: " +
                          violations.front());
      SolverOptions solver = cfg.solver;
      solver.threads = effective_threads(opts.threads);
      const MaxRank r = max_rank_for(sys, solver);
      csv << vary << ',' << format_number(v) << ',' << model_name(m) << ',' << r.method << ','
          << (r.relaxed ? format_number(*r.relaxed) : "") << ',' << r.integer(cfg.antennas)
          << '\n';
    }
  }
  emit(opts, "sweep", base, csv.str(), started, out);
  return kExitOk;
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Scenario config (JSON)")->required();
  cmd->add_option("--model", opts.model, "single-homo | single-hetero | wyner | two-hetero");
  cmd->add_option("--out", opts.out_path, "Write CSV here (plus <out>.manifest.json)");
  cmd->add_option("--threads", opts.threads, "Worker threads (default: machine parallelism)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Achievable transmission-rank regions for opportunistic beamforming"};
  app.name("obfrank");
  app.set_version_flag("--version", std::string(OBFRANK_VERSION));
  app.require_subcommand(1);

  CommonOptions max_opts, region_opts, validate_opts, sweep_opts;
  std::optional<double> other_rank;
  std::string grid_spec;
  std::string ranks_text;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  double noise_scale = 1.0;
  std::string vary;
  std::string values_text;

  auto* max_cmd = app.add_subcommand("max-rank", "Largest achievable rank of one scenario");
  add_common(max_cmd, max_opts);
  max_cmd->add_option("--l-other", other_rank, "Wyner: fix the other cell's rank");

  auto* region_cmd = app.add_subcommand("region", "Pareto boundary of the two-cell rank region");
  add_common(region_cmd, region_opts);
  region_cmd->add_option("--grid", grid_spec, "L1 grid START:STOP:STEP")->required();

  auto* validate_cmd =
      app.add_subcommand("validate", "Compare analytic outage with the Monte-Carlo simulator");
  add_common(validate_cmd, validate_opts);
  validate_cmd->add_option("--ranks", ranks_text, "Comma-separated rank per cell")->required();
  validate_cmd->add_option("--trials", trials, "Monte-Carlo trials");
  validate_cmd->add_option("--seed", seed, "Monte-Carlo seed");
  validate_cmd->add_option("--mc-noise-scale", noise_scale)->group("");

  auto* sweep_cmd = app.add_subcommand("sweep", "Maximum rank while one parameter varies");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--vary", vary, "K | snr | D | eta | p | g | alpha")->required();
  sweep_cmd->add_option("--values", values_text, "Comma-separated values (snr in dB)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << OBFRANK_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (max_cmd->parsed()) return cmd_max_rank(max_opts, other_rank, out);
    if (region_cmd->parsed()) return cmd_region(region_opts, grid_spec, out);
    if (validate_cmd->parsed())
      return cmd_validate(validate_opts, ranks_text, trials, seed, noise_scale, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts, vary, values_text, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace obfrank::cli
