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

#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "obfrank/cli.hpp"

namespace obfrank::cli {

namespace {

using nlohmann::json;

double from_db(double db) { return std::pow(10.0, db / 10.0); }

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key))
      throw ConfigError((where.empty() ? key : where + "." + key) + ": unknown key");
  }
}

const json* section(const json& root, const char* name) {
  if (!root.contains(name)) return nullptr;
  const json& s = root.at(name);
  if (!s.is_object()) throw ConfigError(std::string(name) + ": expected an object");
  return &s;
}

double number(const json& obj, const std::string& where, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

std::int64_t integer(const json& obj, const std::string& where, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<std::int64_t>();
}

// Reads `key` or `key_db` (not both) into `out`.
void linear_or_db(const json& obj, const std::string& where, const char* key, const char* db_key,
                  double& out) {
  const bool has_linear = obj.contains(key);
  const bool has_db = obj.contains(db_key);
  if (has_linear && has_db)
    throw ConfigError(where + "." + db_key + ": conflicts with " + where + "." + key);
  if (has_linear) out = number(obj, where, key);
  if (has_db) out = from_db(number(obj, where, db_key));
}

}  // namespace

std::string_view model_name(Model model) {
  switch (model) {
    case Model::kSingleHomogeneous: return "single-homo";
    case Model::kSingleHeterogeneous: return "single-hetero";
    case Model::kWyner: return "wyner";
    case Model::kTwoCellHeterogeneous: return "two-hetero";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  if (name == "single-homo") return Model::kSingleHomogeneous;
  if (name == "single-hetero") return Model::kSingleHeterogeneous;
  if (name == "wyner") return Model::kWyner;
  if (name == "two-hetero") return Model::kTwoCellHeterogeneous;
  throw ConfigError("model: unknown model '" + std::string(name) + "'");
}

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown(root, "", {"model", "geometry", "qos", "channel", "solver", "montecarlo"});

  RunConfig c;
  if (root.contains("model")) {
    if (!root.at("model").is_string()) throw ConfigError("model: expected a string");
    c.model = parse_model(root.at("model").get<std::string>());
  }

  if (const json* g = section(root, "geometry")) {
    reject_unknown(*g, "geometry",
                   {"cell_size", "cross_gain", "cross_gain_db", "gain", "gain_db", "cells", "bs_x"});
    if (g->contains("cell_size")) c.cell_size = number(*g, "geometry", "cell_size");
    linear_or_db(*g, "geometry", "cross_gain", "cross_gain_db", c.cross_gain);
    linear_or_db(*g, "geometry", "gain", "gain_db", c.gain);
    if (g->contains("cells")) c.grid_cells = static_cast<int>(integer(*g, "geometry", "cells"));
    if (g->contains("bs_x")) {
      const json& xs = g->at("bs_x");
      if (!xs.is_array()) throw ConfigError("geometry.bs_x: expected an array of numbers");
      std::vector<double> v;
      for (const json& x : xs) {
        if (!x.is_number()) throw ConfigError("geometry.bs_x: expected an array of numbers");
        v.push_back(x.get<double>());
      }
      c.bs_x = std::move(v);
    }
  }

  if (const json* q = section(root, "qos")) {
    reject_unknown(*q, "qos", {"eta", "eta_db", "p"});
    linear_or_db(*q, "qos", "eta", "eta_db", c.qos.eta);
    if (q->contains("p")) c.qos.p = number(*q, "qos", "p");
  }

  if (const json* ch = section(root, "channel")) {
    reject_unknown(*ch, "channel",
                   {"users_per_cell", "antennas", "noise_power", "snr_db", "path_loss_exponent"});
    if (ch->contains("users_per_cell"))
      c.users = static_cast<int>(integer(*ch, "channel", "users_per_cell"));
    if (ch->contains("antennas")) c.antennas = static_cast<int>(integer(*ch, "channel", "antennas"));
    if (ch->contains("noise_power") && ch->contains("snr_db"))
      throw ConfigError("channel.snr_db: conflicts with channel.noise_power");
    if (ch->contains("noise_power")) c.noise_power = number(*ch, "channel", "noise_power");
    if (ch->contains("snr_db")) c.noise_power = 1.0 / from_db(number(*ch, "channel", "snr_db"));
    if (ch->contains("path_loss_exponent"))
      c.alpha = number(*ch, "channel", "path_loss_exponent");
  }

  if (const json* s = section(root, "solver")) {
    reject_unknown(*s, "solver", {"rank_ceiling", "omega_tol", "bisection_tol"});
    if (s->contains("rank_ceiling")) c.solver.rank_ceiling = number(*s, "solver", "rank_ceiling");
    if (s->contains("omega_tol")) c.solver.omega_tol = number(*s, "solver", "omega_tol");
    if (s->contains("bisection_tol")) c.solver.bisection_tol = number(*s, "solver", "bisection_tol");
    if (!(c.solver.rank_ceiling >= 1.0)) throw ConfigError("solver.rank_ceiling: must be >= 1");
    if (!(c.solver.omega_tol > 0.0)) throw ConfigError("solver.omega_tol: must be positive");
    if (!(c.solver.bisection_tol > 0.0)) throw ConfigError("solver.bisection_tol: must be positive");
  }

  if (const json* m = section(root, "montecarlo")) {
    reject_unknown(*m, "montecarlo", {"trials", "seed"});
    if (m->contains("trials")) c.trials = integer(*m, "montecarlo", "trials");
    if (m->contains("seed")) {
      const json& v = m->at("seed");
      if (!v.is_number_unsigned()) throw ConfigError("montecarlo.seed: expected a non-negative integer");
      c.seed = v.get<std::uint64_t>();
    }
    if (c.trials < 1) throw ConfigError("montecarlo.trials: must be positive");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  json geometry = {{"cell_size", c.cell_size},
                   {"cross_gain", c.cross_gain},
                   {"gain", c.gain},
                   {"cells", c.grid_cells}};
  if (c.bs_x) geometry["bs_x"] = *c.bs_x;
  const json root = {
      {"model", std::string(model_name(c.model))},
      {"geometry", geometry},
      {"qos", {{"eta", c.qos.eta}, {"p", c.qos.p}}},
      {"channel",
       {{"users_per_cell", c.users},
        {"antennas", c.antennas},
        {"noise_power", c.noise_power},
        {"path_loss_exponent", c.alpha}}},
      {"solver",
       {{"rank_ceiling", c.solver.rank_ceiling},
        {"omega_tol", c.solver.omega_tol},
        {"bisection_tol", c.solver.bisection_tol}}},
      {"montecarlo", {{"trials", c.trials}, {"seed", c.seed}}},
  };
  return root.dump(2);
}

std::string config_digest(const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SystemConfig system_for(const RunConfig& c) {
  SystemConfig s;
  s.users_per_cell = c.users;
  s.antennas = c.antennas;
  s.noise_power = c.noise_power;
  s.qos = c.qos;
  switch (c.model) {
    case Model::kSingleHomogeneous:
      s.geometry = Homogeneous{c.gain};
      break;
    case Model::kSingleHeterogeneous:
      s.geometry = Disk{c.cell_size};
      s.path_loss = PathLossModel{c.alpha};
      break;
    case Model::kWyner:
      s.geometry = Wyner{c.cross_gain};
      break;
    case Model::kTwoCellHeterogeneous: {
      RectGrid grid = RectGrid::adjacent(c.cell_size, c.grid_cells);
      if (c.bs_x) grid.bs_x = *c.bs_x;
      s.geometry = std::move(grid);
      s.path_loss = PathLossModel{c.alpha};
      break;
    }
  }
  s.cells = cell_count(s.geometry);
  return s;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_grid(std::string_view spec) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = spec.find(':', start);
    const std::string_view token = spec.substr(start, colon == std::string_view::npos
                                                          ? std::string_view::npos
                                                          : colon - start);
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size() || token.empty())
      throw ConfigError("--grid: expected START:STOP:STEP, got '" + std::string(spec) + "'");
    parts.push_back(v);
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3)
    throw ConfigError("--grid: expected START:STOP:STEP, got '" + std::string(spec) + "'");
  const double first = parts[0], last = parts[1], step = parts[2];
  if (!(step > 0.0) || !(last >= first))
    throw ConfigError("--grid: need STEP > 0 and STOP >= START");
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((last - first) / step + 1e-9));
  for (long i = 0; i <= n; ++i) grid.push_back(first + static_cast<double>(i) * step);
  return grid;
}

}  // namespace obfrank::cli
