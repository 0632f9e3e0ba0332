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

#ifndef OBFRANK_CLI_HPP_
#define OBFRANK_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "obfrank/model.hpp"
#include "obfrank/region.hpp"

namespace obfrank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitValidationFailure = 3;

/// Malformed or invalid config; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Model { kSingleHomogeneous, kSingleHeterogeneous, kWyner, kTwoCellHeterogeneous };

std::string_view model_name(Model model);
/// Parses "single-homo", "single-hetero", "wyner" or "two-hetero".
Model parse_model(std::string_view name);

/// Scenario parameters shared by every network model. The model picks which
/// of them build the geometry: cell_size is the disk radius or the square
/// half width, gain the homogeneous gain, cross_gain the Wyner gain.
struct RunConfig {
  Model model = Model::kWyner;
  double cell_size = 2.0;
  double cross_gain = 0.1;
  double gain = 1.0;
  int grid_cells = 2;
  std::optional<std::vector<double>> bs_x;
  QosSpec qos{4.0, 0.1};
  int users = 10;
  int antennas = 8;
  double noise_power = 0.01;
  double alpha = 3.0;
  SolverOptions solver;
  std::int64_t trials = 100'000;
  std::uint64_t seed = 1;

  bool operator==(const RunConfig&) const = default;
};

/// JSON document with keys {model, geometry, qos, channel, solver, montecarlo}.
/// *_db keys are converted to linear units here. Throws ConfigError.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);
/// Canonical JSON (linear units, sorted keys); parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);
/// FNV-1a 64 of the canonical serialisation, as 16 hex digits.
std::string config_digest(const RunConfig& config);

SystemConfig system_for(const RunConfig& config);

/// Locale-independent, 12 significant digits.
std::string format_number(double value);

/// Parses START:STOP:STEP into the inclusive list of grid points.
std::vector<double> parse_grid(std::string_view spec);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace obfrank::cli

#endif  // OBFRANK_CLI_HPP_
