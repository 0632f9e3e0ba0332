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

#include "obfrank/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace obfrank {

RectGrid RectGrid::adjacent(double half_width, int cells) {
  RectGrid grid{half_width, {}};
  grid.bs_x.reserve(static_cast<std::size_t>(std::max(cells, 0)));
  for (int i = 1; i <= cells; ++i) grid.bs_x.push_back((2.0 * i - 1.0) * half_width);
  return grid;
}

int cell_count(const CellGeometry& geometry) {
  struct Visitor {
    int operator()(const Disk&) const { return 1; }
    int operator()(const RectGrid& g) const { return static_cast<int>(g.bs_x.size()); }
    int operator()(const Wyner&) const { return 2; }
    int operator()(const Homogeneous&) const { return 1; }
  };
  return std::visit(Visitor{}, geometry);
}

bool has_user_locations(const CellGeometry& geometry) {
  return std::holds_alternative<Disk>(geometry) || std::holds_alternative<RectGrid>(geometry);
}

std::vector<int> integerize(std::span<const double> relaxed, int antennas) {
  if (antennas < 1) throw std::domain_error("integerize: antennas must be at least 1");
  std::vector<int> out;
  out.reserve(relaxed.size());
  for (double l : relaxed) {
    if (!(l >= 1.0)) throw std::domain_error("integerize: relaxed rank below 1");
    const double f = std::floor(l);
    out.push_back(f >= antennas ? antennas : static_cast<int>(f));
  }
  return out;
}

RankTuple::RankTuple(std::vector<double> relaxed, int antennas)
    : relaxed_(std::move(relaxed)), integer_(integerize(relaxed_, antennas)), antennas_(antennas) {}

namespace {

void check_geometry(const CellGeometry& geometry, std::vector<std::string>& out) {
  if (const auto* disk = std::get_if<Disk>(&geometry)) {
    if (!(disk->radius > 0.0)) out.emplace_back("disk radius must be positive");
  } else if (const auto* grid = std::get_if<RectGrid>(&geometry)) {
    if (!(grid->half_width > 0.0)) out.emplace_back("rect grid half width must be positive");
    if (grid->bs_x.empty()) out.emplace_back("rect grid needs at least one base station");
    for (std::size_t i = 1; i < grid->bs_x.size(); ++i) {
      const double gap = grid->bs_x[i] - grid->bs_x[i - 1];
      if (!(gap > 0.0)) {
        out.emplace_back("rect grid bs_x must be strictly increasing");
        break;
      }
      if (std::abs(gap - 2.0 * grid->half_width) > 1e-9 * std::max(1.0, grid->half_width)) {
        out.emplace_back("rect grid bs_x spacing must equal 2 * half_width");
        break;
      }
    }
  } else if (const auto* wyner = std::get_if<Wyner>(&geometry)) {
    if (!(wyner->cross_gain >= 0.0)) out.emplace_back("wyner cross gain must be non-negative");
  } else if (const auto* homo = std::get_if<Homogeneous>(&geometry)) {
    if (!(homo->gain > 0.0)) out.emplace_back("homogeneous gain must be positive");
  }
}

}  // namespace

std::vector<std::string> validate(const SystemConfig& config) {
  std::vector<std::string> out;
  if (config.cells < 1) out.emplace_back("cells must be at least 1");
  if (config.users_per_cell < 1) out.emplace_back("users_per_cell must be at least 1");
  if (config.antennas < 1) out.emplace_back("antennas must be at least 1");
  if (!(config.noise_power > 0.0)) out.emplace_back("noise_power must be positive");
  if (!(config.qos.eta > 0.0)) out.emplace_back("eta must be positive");
  if (!(config.qos.p > 0.0 && config.qos.p < 1.0)) out.emplace_back("p in open interval (0,1)");

  check_geometry(config.geometry, out);
  if (config.cells != cell_count(config.geometry))
    out.emplace_back("cells does not match geometry (" + std::to_string(cell_count(config.geometry)) +
                     " implied)");

  if (has_user_locations(config.geometry)) {
    if (!config.path_loss)
      out.emplace_back("path loss model required for located users");
    else if (!(config.path_loss->alpha > 2.0))
      out.emplace_back("alpha must exceed 2");
  } else if (config.path_loss && !(config.path_loss->alpha > 2.0)) {
    out.emplace_back("alpha must exceed 2");
  }
  return out;
}

}  // namespace obfrank
