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

#include "obfrank/analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "obfrank/quadrature.hpp"
#include "obfrank/special_fn.hpp"

namespace obfrank {

namespace {

struct Bracket {
  double value;
  bool clamped;
};

void require_rank(double rank, const char* who) {
  if (!(rank >= 1.0)) throw std::domain_error(std::string(who) + ": rank below 1");
}

void require_threshold(double x, const char* who) {
  if (!(x >= 0.0)) throw std::domain_error(std::string(who) + ": negative threshold");
}

void require_noise(double noise, const char* who) {
  if (!(noise >= 0.0)) throw std::domain_error(std::string(who) + ": negative noise power");
}

void require_users(int users, const char* who) {
  if (users < 1) throw std::domain_error(std::string(who) + ": need at least one user");
}

// [1 - S]^K from log S.
Bracket outage_from_log_success(double log_success, int users) {
  bool clamped = false;
  if (log_success > 0.0) {
    log_success = 0.0;
    clamped = true;
  }
  const double success = std::exp(log_success);
  return {std::exp(static_cast<double>(users) * std::log1p(-success)), clamped};
}

Bracket outage_from_success(double success, int users) {
  bool clamped = false;
  if (success > 1.0) {
    success = 1.0;
    clamped = true;
  } else if (success < 0.0) {
    success = 0.0;
    clamped = true;
  }
  return {std::exp(static_cast<double>(users) * std::log1p(-success)), clamped};
}

Bracket heterogeneous_single(double eta, double rank, double radius, double alpha, double noise,
                             int users) {
  const char* who = "outage_single_cell_heterogeneous";
  require_threshold(eta, who);
  require_rank(rank, who);
  require_noise(noise, who);
  require_users(users, who);
  if (!(radius > 0.0)) throw std::domain_error("outage_single_cell_heterogeneous: radius <= 0");
  if (!(alpha > 2.0)) throw std::domain_error("outage_single_cell_heterogeneous: alpha <= 2");
  const double c = eta * noise * rank;
  if (c == 0.0) return outage_from_log_success(-(rank - 1.0) * std::log1p(eta), users);
  const double shape = 2.0 / alpha;
  const double log_c = std::log(c);
  const double gamma = lower_incomplete_gamma(shape, std::exp(log_c + alpha * std::log(radius)));
  const double log_success = std::log(shape) - shape * log_c + std::log(gamma) -
                             2.0 * std::log(radius) - (rank - 1.0) * std::log1p(eta);
  return outage_from_log_success(log_success, users);
}

struct TwoCellLayout {
  double own_x;
  double other_x;
  double half_width;
};

TwoCellLayout layout_for(const RectGrid& grid, int cell) {
  if (grid.bs_x.size() != 2) throw std::invalid_argument("omega_integral: needs a two-cell grid");
  if (cell != 0 && cell != 1) throw std::invalid_argument("omega_integral: cell must be 0 or 1");
  if (!(grid.half_width > 0.0)) throw std::domain_error("omega_integral: half width <= 0");
  const auto own = static_cast<std::size_t>(cell);
  return {grid.bs_x[own], grid.bs_x[1 - own], grid.half_width};
}

Bracket two_cell(double eta, double own_rank, double other_rank, const RectGrid& grid,
                 double alpha, double noise, int users, int cell, double tol) {
  require_users(users, "outage_two_cell_heterogeneous");
  const double omega = omega_integral(eta, own_rank, other_rank, grid, alpha, noise, cell, tol);
  const double area = 4.0 * grid.half_width * grid.half_width;
  const double success = omega / area * std::exp(-(own_rank - 1.0) * std::log1p(eta));
  return outage_from_success(success, users);
}

}  // namespace

double cdf_single_cell_conditional(double x, double rank, double gain, double noise) {
  const char* who = "cdf_single_cell_conditional";
  require_threshold(x, who);
  require_rank(rank, who);
  require_noise(noise, who);
  if (!(gain > 0.0)) throw std::domain_error("cdf_single_cell_conditional: gain <= 0");
  return -std::expm1(-x * noise * rank / gain - (rank - 1.0) * std::log1p(x));
}

double outage_single_cell_homogeneous(double eta, double rank, double gain, double noise,
                                      int users) {
  require_users(users, "outage_single_cell_homogeneous");
  require_threshold(eta, "outage_single_cell_homogeneous");
  require_rank(rank, "outage_single_cell_homogeneous");
  require_noise(noise, "outage_single_cell_homogeneous");
  if (!(gain > 0.0)) throw std::domain_error("outage_single_cell_homogeneous: gain <= 0");
  const double log_success = -eta * noise * rank / gain - (rank - 1.0) * std::log1p(eta);
  return outage_from_log_success(log_success, users).value;
}

double outage_single_cell_heterogeneous(double eta, double rank, double radius, double alpha,
                                        double noise, int users) {
  return heterogeneous_single(eta, rank, radius, alpha, noise, users).value;
}

double cdf_multicell_conditional(double x, std::size_t cell, std::span<const double> ranks,
                                 std::span<const double> gains, double noise) {
  const char* who = "cdf_multicell_conditional";
  if (ranks.size() != gains.size() || cell >= ranks.size())
    throw std::invalid_argument("cdf_multicell_conditional: ranks/gains size mismatch");
  require_threshold(x, who);
  require_noise(noise, who);
  for (double l : ranks) require_rank(l, who);
  for (double g : gains)
    if (!(g > 0.0)) throw std::domain_error("cdf_multicell_conditional: non-positive gain");
  const double own_rank = ranks[cell];
  const double own_gain = gains[cell];
  double log_success = -x * noise * own_rank / own_gain - (own_rank - 1.0) * std::log1p(x);
  for (std::size_t j = 0; j < ranks.size(); ++j) {
    if (j == cell) continue;
    log_success -= ranks[j] * std::log1p(x * (gains[j] / own_gain) * (own_rank / ranks[j]));
  }
  return -std::expm1(log_success);
}

double outage_wyner(double eta, double own_rank, double other_rank, double cross_gain,
                    double noise, int users) {
  const char* who = "outage_wyner";
  require_threshold(eta, who);
  require_rank(own_rank, who);
  require_rank(other_rank, who);
  require_noise(noise, who);
  require_users(users, who);
  if (!(cross_gain >= 0.0)) throw std::domain_error("outage_wyner: negative cross gain");
  const double log_success = -eta * noise * own_rank - (own_rank - 1.0) * std::log1p(eta) -
                             other_rank * std::log1p(own_rank / other_rank * cross_gain * eta);
  return outage_from_log_success(log_success, users).value;
}

double omega_integral(double eta, double own_rank, double other_rank, const RectGrid& grid,
                      double alpha, double noise, int cell, double tol) {
  const char* who = "omega_integral";
  require_threshold(eta, who);
  require_rank(own_rank, who);
  require_rank(other_rank, who);
  require_noise(noise, who);
  if (!(alpha > 2.0)) throw std::domain_error("omega_integral: alpha <= 2");
  const TwoCellLayout lay = layout_for(grid, cell);

  const double decay = eta * noise * own_rank;
  const double ratio_scale = own_rank / other_rank * eta;
  const double half_alpha = 0.5 * alpha;
  auto integrand = [&](double x, double y) {
    const double y2 = y * y;
    const double own_d2 = (x - lay.own_x) * (x - lay.own_x) + y2;
    const double other_d2 = (x - lay.other_x) * (x - lay.other_x) + y2;
    if (own_d2 == 0.0) return 1.0;
    const double ratio = std::exp(half_alpha * std::log(own_d2 / other_d2));
    return std::exp(-decay * std::exp(half_alpha * std::log(own_d2)) -
                    other_rank * std::log1p(ratio * ratio_scale));
  };

  // Mirror symmetric in y; split at the BS abscissa so the non-smooth point
  // sits on a panel corner.
  const double d = lay.half_width;
  const double quarter = 0.25 * tol;
  const Rect left(Eigen::Vector2d(lay.own_x - d, 0.0), Eigen::Vector2d(lay.own_x, d));
  const Rect right(Eigen::Vector2d(lay.own_x, 0.0), Eigen::Vector2d(lay.own_x + d, d));
  const double value = integrate_2d(integrand, left, quarter).value +
                       integrate_2d(integrand, right, quarter).value;
  return 2.0 * value;
}

double outage_two_cell_heterogeneous(double eta, double own_rank, double other_rank,
                                     const RectGrid& grid, double alpha, double noise, int users,
                                     int cell, double tol) {
  return two_cell(eta, own_rank, other_rank, grid, alpha, noise, users, cell, tol).value;
}

OutageLhs outage_for(const SystemConfig& config, std::span<const double> ranks, int cell,
                     double omega_tol) {
  const int cells = cell_count(config.geometry);
  if (static_cast<int>(ranks.size()) != cells)
    throw std::invalid_argument("outage_for: need one rank per cell");
  if (cell < 0 || cell >= cells) throw std::invalid_argument("outage_for: cell out of range");
  const double eta = config.qos.eta;
  const double noise = config.noise_power;
  const int users = config.users_per_cell;
  const auto own = static_cast<std::size_t>(cell);

  if (const auto* homo = std::get_if<Homogeneous>(&config.geometry)) {
    return {outage_single_cell_homogeneous(eta, ranks[0], homo->gain, noise, users),
            "single-cell homogeneous closed form", false};
  }
  if (const auto* disk = std::get_if<Disk>(&config.geometry)) {
    if (!config.path_loss) throw std::invalid_argument("outage_for: disk needs a path loss model");
    const Bracket b =
        heterogeneous_single(eta, ranks[0], disk->radius, config.path_loss->alpha, noise, users);
    return {b.value, "single-cell heterogeneous incomplete-gamma form", b.clamped};
  }
  if (const auto* wyner = std::get_if<Wyner>(&config.geometry)) {
    return {outage_wyner(eta, ranks[own], ranks[1 - own], wyner->cross_gain, noise, users),
            "two-cell wyner closed form", false};
  }
  const auto& grid = std::get<RectGrid>(config.geometry);
  if (!config.path_loss) throw std::invalid_argument("outage_for: grid needs a path loss model");
  if (cells != 2)
    throw std::invalid_argument("outage_for: heterogeneous analytics cover two cells only");
  const Bracket b = two_cell(eta, ranks[own], ranks[1 - own], grid, config.path_loss->alpha,
                             noise, users, cell, omega_tol);
  return {b.value, "two-cell heterogeneous location integral", b.clamped};
}

}  // namespace obfrank
