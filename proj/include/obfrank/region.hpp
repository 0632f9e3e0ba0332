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

#ifndef OBFRANK_REGION_HPP_
#define OBFRANK_REGION_HPP_

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "obfrank/analytic.hpp"
#include "obfrank/model.hpp"

namespace obfrank {

/// Largest relaxed rank meeting the QoS target, or infeasible when even a
/// single beam violates it.
struct MaxRank {
  std::optional<double> relaxed;
  std::string method;

  bool feasible() const { return relaxed.has_value(); }
  /// min(antennas, floor(relaxed)); 0 when infeasible.
  int integer(int antennas) const;
};

inline constexpr double kBisectionTol = 1e-10;
inline constexpr double kDefaultRankCeiling = 64.0;

/// The outage function handed to max_rank_monotone decreased on the probe grid.
class MonotonicityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SolverOptions {
  double rank_ceiling = kDefaultRankCeiling;  // upper end of every rank search
  double omega_tol = kDefaultOmegaTol;
  double bisection_tol = kBisectionTol;
  int threads = 1;

  bool operator==(const SolverOptions&) const = default;
};

/// log(1 - p^(1/K)), accurate when p^(1/K) is close to one.
double log_one_minus_root(double p, int users);

/// Single cell, homogeneous gain g: closed form.
MaxRank max_rank_homogeneous(const QosSpec& qos, double gain, double noise, int users);

/// Wyner cell one with cell two's rank fixed: closed form through Lambert-W.
/// g = 0 falls back to max_rank_homogeneous with unit gain.
MaxRank max_rank_wyner(const QosSpec& qos, double other_rank, double cross_gain, double noise,
                       int users);

/// Wyner with both cells at the same rank: closed form.
MaxRank equal_rank_wyner(const QosSpec& qos, double cross_gain, double noise, int users);

/// Supremum of {L in [1, ceiling] : outage(L) <= p} for an outage nondecreasing
/// in L. Returns the ceiling when it is feasible, infeasible when L = 1 is not.
/// Throws MonotonicityError if a 10-point probe finds a decrease.
MaxRank max_rank_monotone(const std::function<double(double)>& outage, const QosSpec& qos,
                          double ceiling, double tol = kBisectionTol);

/// Single disk cell with random user locations, inverted numerically.
MaxRank max_rank_heterogeneous_single(const QosSpec& qos, double radius, double alpha,
                                      double noise, int users,
                                      double ceiling = kDefaultRankCeiling);

/// Two-cell heterogeneous grid with both cells at the same rank; both cells'
/// constraints must hold.
MaxRank max_equal_rank_two_cell(const QosSpec& qos, const RectGrid& grid, double alpha,
                                double noise, int users, const SolverOptions& options = {});

/// Largest feasible rank of the config's network: single-cell models solve for
/// the one rank, two-cell models for the common rank of both cells.
MaxRank max_rank_for(const SystemConfig& config, const SolverOptions& options = {});

struct BoundarySample {
  double l1 = 1.0;
  std::optional<double> l2_max;  // empty when no L2 >= 1 works at this L1
};

/// Sampled Pareto boundary of the two-cell achievable rank region.
struct RegionBoundary {
  std::vector<BoundarySample> samples;
  std::string model;
  SystemConfig config;
  /// Common rank where the boundary meets the diagonal L1 = L2.
  std::optional<double> diagonal_corner;

  bool empty() const;
};

/// Outage of one cell as a function of (L1, L2).
using PairOutage = std::function<double(double, double)>;

/// For every L1 in the grid, the largest L2 in [1, ceiling] such that both
/// cells meet the QoS target at (L1, L2). Grid points are independent and may
/// be solved on `options.threads` workers; output order follows the grid.
RegionBoundary boundary_two_cell(const PairOutage& cell_one, const PairOutage& cell_two,
                                 const QosSpec& qos, std::span<const double> grid,
                                 const SolverOptions& options = {});

RegionBoundary boundary_wyner(const QosSpec& qos, double cross_gain, double noise, int users,
                              std::span<const double> grid, const SolverOptions& options = {});

RegionBoundary boundary_heterogeneous(const QosSpec& qos, const RectGrid& geometry, double alpha,
                                      double noise, int users, std::span<const double> grid,
                                      const SolverOptions& options = {});

/// Dispatches on a two-cell config (Wyner or two-cell RectGrid).
RegionBoundary boundary_for(const SystemConfig& config, std::span<const double> grid,
                            const SolverOptions& options = {});

}  // namespace obfrank

#endif  // OBFRANK_REGION_HPP_
