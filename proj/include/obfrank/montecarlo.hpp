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

#ifndef OBFRANK_MONTECARLO_HPP_
#define OBFRANK_MONTECARLO_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "obfrank/model.hpp"

namespace obfrank {

/// Simulator of the physical downlink: random user drops, i.i.d. CN(0,1)
/// Rayleigh channels, Haar-random orthonormal beams and per-beam max-SINR
/// scheduling. Every trial draws from its own generator seeded by
/// (seed, trial index), so estimates do not depend on the worker count.
///
/// User locations are redrawn in every trial. The location-averaged analytic
/// constraints integrate over the drop, which is what a fresh drop per trial
/// estimates; a frozen drop would estimate a conditional outage instead.
using Rng = std::mt19937_64;

/// Generator for one trial, derived from the run seed by a splitmix64 hash.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

/// `rank` orthonormal columns of dimension `antennas`: the thin Q factor of an
/// i.i.d. complex Gaussian matrix with the phases of R's diagonal folded back
/// in, which makes the columns Haar distributed on the Stiefel manifold.
Eigen::MatrixXcd draw_beams(int antennas, int rank, Rng& rng);

/// K uniform user positions per cell. Disk cells are centred on the origin;
/// grid cells on (bs_x[i], 0). Throws std::invalid_argument for geometries
/// without locations.
std::vector<std::vector<Eigen::Vector2d>> draw_users(const CellGeometry& geometry, int users,
                                                     Rng& rng);

/// Position of BS `cell` for located geometries.
Eigen::Vector2d bs_position(const CellGeometry& geometry, int cell);

/// One realisation of everything random in a time slot.
struct ScenarioDraw {
  std::vector<Eigen::MatrixXcd> beams;                 // per BS: antennas x rank
  std::vector<std::vector<Eigen::MatrixXcd>> channels;  // [cell][user]: antennas x cells
  std::vector<Eigen::MatrixXd> gains;                  // per cell: users x cells
};

/// Large-scale gains (users x cells) of the users of `cell` at the given positions.
Eigen::MatrixXd user_gains(const SystemConfig& config, int cell,
                           std::span<const Eigen::Vector2d> positions);

ScenarioDraw draw_scenario(const SystemConfig& config, std::span<const int> ranks, Rng& rng);

/// SINR of every (cell, user, beam) from the per-beam SINR expression with the
/// L_i / L_j power ratios: per cell a users x rank matrix.
std::vector<Eigen::MatrixXd> sinr_sample(const ScenarioDraw& draw, std::span<const int> ranks,
                                         double noise);

/// Same quantity assembled from the received-signal decomposition: every
/// stream's complex amplitude sqrt(g / L_j) h^T w, with per-symbol power 1 / L_j.
std::vector<Eigen::MatrixXd> sinr_from_signal_model(const ScenarioDraw& draw,
                                                    std::span<const int> ranks, double noise);

enum class BeamChoice { kFirst, kUniform };

struct TrialConfig {
  SystemConfig system;
  std::vector<int> ranks;  // integer ranks, one per cell
  std::int64_t trials = 10'000;
  std::uint64_t seed = 1;
  int observed_cell = 0;
  BeamChoice beam = BeamChoice::kFirst;
  double noise_scale = 1.0;  // multiplies system.noise_power inside the simulator only

  /// Trial config from a RankTuple's integer ranks.
  static TrialConfig from_ranks(const SystemConfig& system, const RankTuple& ranks,
                                std::int64_t trials, std::uint64_t seed);
};

struct CellOutage {
  double p_hat = 0.0;
  double std_err = 0.0;
};

struct OutageEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;
  std::int64_t trials = 0;
  std::vector<CellOutage> per_cell;
};

/// Fraction of trials in which the max-SINR user of the observed beam is at
/// or below eta, for every cell; p_hat / std_err refer to `observed_cell`.
OutageEstimate estimate_outage(const TrialConfig& config, double eta, int threads = 1);

}  // namespace obfrank

#endif  // OBFRANK_MONTECARLO_HPP_
