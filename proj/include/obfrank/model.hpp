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

#ifndef OBFRANK_MODEL_HPP_
#define OBFRANK_MODEL_HPP_

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace obfrank {

/// Per-beam QoS target: Pr{max-SINR <= eta} <= p. Linear units.
struct QosSpec {
  double eta = 1.0;
  double p = 0.1;

  bool operator==(const QosSpec&) const = default;
};

/// G(d) = d^-alpha.
struct PathLossModel {
  double alpha = 3.0;
};

/// Single cell of radius D, users uniform over the disk, BS at the centre.
struct Disk {
  double radius = 1.0;
};

/// Square cells of side 2D centred at (bs_x[i], 0); users attach to the closest BS.
struct RectGrid {
  double half_width = 1.0;
  std::vector<double> bs_x;

  /// Adjacent squares, X_i = (2i - 1) D for i = 1..cells.
  static RectGrid adjacent(double half_width, int cells);
};

/// Two cells with unit own-cell gain and constant gain g to the other BS.
struct Wyner {
  double cross_gain = 0.0;
};

/// Single cell whose users all share the deterministic gain g.
struct Homogeneous {
  double gain = 1.0;
};

using CellGeometry = std::variant<Disk, RectGrid, Wyner, Homogeneous>;

/// Number of cells implied by a geometry.
int cell_count(const CellGeometry& geometry);

/// True for geometries whose users have random locations.
bool has_user_locations(const CellGeometry& geometry);

struct SystemConfig {
  int cells = 1;
  int users_per_cell = 1;
  int antennas = 8;
  double noise_power = 0.01;
  CellGeometry geometry = Homogeneous{};
  std::optional<PathLossModel> path_loss;
  QosSpec qos;
};

/// min(antennas, floor(relaxed_i)) element-wise. Throws std::domain_error on
/// any relaxed rank below one or antennas < 1.
std::vector<int> integerize(std::span<const double> relaxed, int antennas);

/// Relaxed per-cell ranks with their derived integer counterparts.
class RankTuple {
 public:
  RankTuple(std::vector<double> relaxed, int antennas);

  const std::vector<double>& relaxed() const { return relaxed_; }
  const std::vector<int>& integer() const { return integer_; }
  int antennas() const { return antennas_; }
  std::size_t size() const { return relaxed_.size(); }

 private:
  std::vector<double> relaxed_;
  std::vector<int> integer_;
  int antennas_;
};

/// Every invariant violation in the config; empty when valid.
std::vector<std::string> validate(const SystemConfig& config);

}  // namespace obfrank

#endif  // OBFRANK_MODEL_HPP_
