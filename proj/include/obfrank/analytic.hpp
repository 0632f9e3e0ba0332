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

#ifndef OBFRANK_ANALYTIC_HPP_
#define OBFRANK_ANALYTIC_HPP_

#include <span>
#include <string>

#include "obfrank/model.hpp"

namespace obfrank {

/// Per-beam SINR outage Pr{max-SINR <= eta} and the expression that produced it.
struct OutageLhs {
  double value = 0.0;
  std::string context;
  bool clamped = false;  // the per-user success term left [0, 1] by rounding
};

/// Default absolute tolerance for the two-cell location integral.
inline constexpr double kDefaultOmegaTol = 1e-8;

// Every outage below has the form [1 - S]^K where S is the probability that
// one user's beam SINR exceeds eta. S is assembled in log space and the power
// is taken as exp(K log1p(-S)) so that S near 0 survives large K.

/// Beam SINR CDF of a single-cell user with known gain: 1 - e^(-x noise L / g) / (x+1)^(L-1).
double cdf_single_cell_conditional(double x, double rank, double gain, double noise);

/// Single cell, all K users at gain g.
double outage_single_cell_homogeneous(double eta, double rank, double gain, double noise,
                                      int users);

/// Single disk cell of radius D with users uniform over the disk, gain d^-alpha.
/// Closed form through the lower incomplete gamma function.
double outage_single_cell_heterogeneous(double eta, double rank, double radius, double alpha,
                                        double noise, int users);

/// Beam SINR CDF of a user in `cell` given its gains to every BS; gains[cell]
/// is the serving gain. With a single cell this is cdf_single_cell_conditional.
double cdf_multicell_conditional(double x, std::size_t cell, std::span<const double> ranks,
                                 std::span<const double> gains, double noise);

/// Two-cell Wyner model from the point of view of the cell with rank `own_rank`.
/// Cell two is the same call with the ranks interchanged.
double outage_wyner(double eta, double own_rank, double other_rank, double cross_gain,
                    double noise, int users);

/// Location average of the per-user success term over one square cell of a
/// two-cell grid, unnormalised (units of area). `cell` is 0 or 1; the other
/// cell is the interferer.
double omega_integral(double eta, double own_rank, double other_rank, const RectGrid& grid,
                      double alpha, double noise, int cell, double tol = kDefaultOmegaTol);

/// [1 - Omega / (A (eta+1)^(L_own - 1))]^K for one cell of the two-cell grid.
double outage_two_cell_heterogeneous(double eta, double own_rank, double other_rank,
                                     const RectGrid& grid, double alpha, double noise, int users,
                                     int cell = 0, double tol = kDefaultOmegaTol);

/// Dispatches on the config's geometry and evaluates the outage of `cell` at
/// the given relaxed ranks (one per cell) and the config's QoS threshold.
OutageLhs outage_for(const SystemConfig& config, std::span<const double> ranks, int cell,
                     double omega_tol = kDefaultOmegaTol);

}  // namespace obfrank

#endif  // OBFRANK_ANALYTIC_HPP_
