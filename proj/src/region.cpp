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

#include "obfrank/region.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "obfrank/special_fn.hpp"

namespace obfrank {

namespace {

constexpr double kProbeSlack = 1e-9;

void require_qos(const QosSpec& qos) {
  if (!(qos.eta >= 0.0)) throw std::domain_error("qos: eta must be non-negative");
  if (!(qos.p > 0.0 && qos.p < 1.0)) throw std::domain_error("qos: p in open interval (0,1)");
}

MaxRank from_bound(double bound, const char* method) {
  if (!(bound >= 1.0)) return {std::nullopt, method};
  return {bound, method};
}

// Runs body(i) for i in [0, n) on up to `threads` workers, rethrowing the
// first failure by index.
template <typename Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

int MaxRank::integer(int antennas) const {
  if (!relaxed) return 0;
  const double r = *relaxed;
  return integerize(std::span<const double>(&r, 1), antennas).front();
}

bool RegionBoundary::empty() const {
  return std::none_of(samples.begin(), samples.end(),
                      [](const BoundarySample& s) { return s.l2_max.has_value(); });
}

double log_one_minus_root(double p, int users) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("log_one_minus_root: p in open interval (0,1)");
  if (users < 1) throw std::domain_error("log_one_minus_root: need at least one user");
  return std::log(-std::expm1(std::log(p) / users));
}

MaxRank max_rank_homogeneous(const QosSpec& qos, double gain, double noise, int users) {
  require_qos(qos);
  if (!(gain > 0.0)) throw std::domain_error("max_rank_homogeneous: gain must be positive");
  const double l1p = std::log1p(qos.eta);
  const double bound =
      (l1p - log_one_minus_root(qos.p, users)) / (qos.eta * noise / gain + l1p);
  return from_bound(bound, "closed-form");
}

MaxRank max_rank_wyner(const QosSpec& qos, double other_rank, double cross_gain, double noise,
                       int users) {
  require_qos(qos);
  if (!(other_rank >= 1.0)) throw std::domain_error("max_rank_wyner: other rank below 1");
  if (!(cross_gain >= 0.0)) throw std::domain_error("max_rank_wyner: negative cross gain");
  if (cross_gain == 0.0) return max_rank_homogeneous(qos, 1.0, noise, users);

  // The constraint reads a L + b log(1 + c L) <= d; with u = (a/b)(L + 1/c)
  // it becomes u e^u <= s e^(s + d/b), s = a/(bc).
  const double l1p = std::log1p(qos.eta);
  const double a = qos.eta * noise + l1p;
  const double b = other_rank;
  const double c = cross_gain * qos.eta / other_rank;
  const double d = l1p - log_one_minus_root(qos.p, users);
  if (!(d > 0.0)) return {std::nullopt, "closed-form"};
  if (c == 0.0) return max_rank_homogeneous(qos, 1.0, noise, users);
  const double s = a / (b * c);
  const double u = lambert_w0_exp(std::log(s) + s + d / b);
  return from_bound(-1.0 / c + (b / a) * u, "closed-form");
}

MaxRank equal_rank_wyner(const QosSpec& qos, double cross_gain, double noise, int users) {
  require_qos(qos);
  if (!(cross_gain >= 0.0)) throw std::domain_error("equal_rank_wyner: negative cross gain");
  const double l1p = std::log1p(qos.eta);
  const double bound = (l1p - log_one_minus_root(qos.p, users)) /
                       (qos.eta * noise + l1p + std::log1p(cross_gain * qos.eta));
  return from_bound(bound, "closed-form");
}

MaxRank max_rank_monotone(const std::function<double(double)>& outage, const QosSpec& qos,
                          double ceiling, double tol) {
  require_qos(qos);
  if (!(ceiling >= 1.0)) throw std::domain_error("max_rank_monotone: ceiling below 1");
  if (!(tol > 0.0)) throw std::domain_error("max_rank_monotone: tol must be positive");

  constexpr int kProbes = 10;
  double previous = outage(1.0);
  const double at_one = previous;
  double at_ceiling = at_one;
  if (ceiling > 1.0) {
    for (int i = 1; i < kProbes; ++i) {
      const double l = 1.0 + (ceiling - 1.0) * i / (kProbes - 1);
      const double v = outage(l);
      if (v < previous - kProbeSlack)
        throw MonotonicityError("max_rank_monotone: outage decreases near L = " +
                                std::to_string(l));
      previous = v;
    }
    at_ceiling = previous;
  }
  if (at_one > qos.p) return {std::nullopt, "bisection"};
  if (at_ceiling <= qos.p) return {ceiling, "bisection"};

  double lo = 1.0;
  double hi = ceiling;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (outage(mid) <= qos.p)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, "bisection"};
}

MaxRank max_rank_heterogeneous_single(const QosSpec& qos, double radius, double alpha,
                                      double noise, int users, double ceiling) {
  return max_rank_monotone(
      [&](double l) {
        return outage_single_cell_heterogeneous(qos.eta, l, radius, alpha, noise, users);
      },
      qos, ceiling);
}

MaxRank max_equal_rank_two_cell(const QosSpec& qos, const RectGrid& grid, double alpha,
                                double noise, int users, const SolverOptions& options) {
  return max_rank_monotone(
      [&](double l) {
        const double one = outage_two_cell_heterogeneous(qos.eta, l, l, grid, alpha, noise, users,
                                                         0, options.omega_tol);
        const double two = outage_two_cell_heterogeneous(qos.eta, l, l, grid, alpha, noise, users,
                                                         1, options.omega_tol);
        return std::max(one, two);
      },
      qos, options.rank_ceiling, options.bisection_tol);
}

MaxRank max_rank_for(const SystemConfig& config, const SolverOptions& options) {
  const QosSpec& qos = config.qos;
  const int users = config.users_per_cell;
  const double noise = config.noise_power;
  if (const auto* homo = std::get_if<Homogeneous>(&config.geometry))
    return max_rank_homogeneous(qos, homo->gain, noise, users);
  if (const auto* wyner = std::get_if<Wyner>(&config.geometry))
    return equal_rank_wyner(qos, wyner->cross_gain, noise, users);
  if (!config.path_loss) throw std::invalid_argument("max_rank_for: path loss model required");
  const double alpha = config.path_loss->alpha;
  if (const auto* disk = std::get_if<Disk>(&config.geometry))
    return max_rank_heterogeneous_single(qos, disk->radius, alpha, noise, users,
                                         options.rank_ceiling);
  const auto& grid = std::get<RectGrid>(config.geometry);
  if (grid.bs_x.size() != 2)
    throw std::invalid_argument("max_rank_for: heterogeneous analytics cover two cells only");
  return max_equal_rank_two_cell(qos, grid, alpha, noise, users, options);
}

RegionBoundary boundary_two_cell(const PairOutage& cell_one, const PairOutage& cell_two,
                                 const QosSpec& qos, std::span<const double> grid,
                                 const SolverOptions& options) {
  require_qos(qos);
  for (double l1 : grid)
    if (!(l1 >= 1.0)) throw std::domain_error("boundary: grid values must be at least 1");

  RegionBoundary out;
  out.samples.resize(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    const double l1 = grid[i];
    const MaxRank r = max_rank_monotone(
        [&](double l2) { return std::max(cell_one(l1, l2), cell_two(l1, l2)); }, qos,
        options.rank_ceiling, options.bisection_tol);
    out.samples[i] = {l1, r.relaxed};
  });

  const MaxRank corner = max_rank_monotone(
      [&](double l) { return std::max(cell_one(l, l), cell_two(l, l)); }, qos,
      options.rank_ceiling, options.bisection_tol);
  out.diagonal_corner = corner.relaxed;
  return out;
}

RegionBoundary boundary_wyner(const QosSpec& qos, double cross_gain, double noise, int users,
                              std::span<const double> grid, const SolverOptions& options) {
  if (!(cross_gain >= 0.0)) throw std::domain_error("boundary_wyner: negative cross gain");
  auto one = [&](double l1, double l2) {
    return outage_wyner(qos.eta, l1, l2, cross_gain, noise, users);
  };
  auto two = [&](double l1, double l2) {
    return outage_wyner(qos.eta, l2, l1, cross_gain, noise, users);
  };
  RegionBoundary out = boundary_two_cell(one, two, qos, grid, options);
  out.model = "wyner";
  out.config.cells = 2;
  out.config.users_per_cell = users;
  out.config.noise_power = noise;
  out.config.geometry = Wyner{cross_gain};
  out.config.qos = qos;
  return out;
}

RegionBoundary boundary_heterogeneous(const QosSpec& qos, const RectGrid& geometry, double alpha,
                                      double noise, int users, std::span<const double> grid,
                                      const SolverOptions& options) {
  if (geometry.bs_x.size() != 2)
    throw std::invalid_argument("boundary_heterogeneous: needs a two-cell grid");
  const double tol = options.omega_tol;
  auto one = [&](double l1, double l2) {
    return outage_two_cell_heterogeneous(qos.eta, l1, l2, geometry, alpha, noise, users, 0, tol);
  };
  auto two = [&](double l1, double l2) {
    return outage_two_cell_heterogeneous(qos.eta, l2, l1, geometry, alpha, noise, users, 1, tol);
  };
  RegionBoundary out = boundary_two_cell(one, two, qos, grid, options);
  out.model = "two-hetero";
  out.config.cells = 2;
  out.config.users_per_cell = users;
  out.config.noise_power = noise;
  out.config.geometry = geometry;
  out.config.path_loss = PathLossModel{alpha};
  out.config.qos = qos;
  return out;
}

RegionBoundary boundary_for(const SystemConfig& config, std::span<const double> grid,
                            const SolverOptions& options) {
  RegionBoundary out;
  if (const auto* wyner = std::get_if<Wyner>(&config.geometry)) {
    out = boundary_wyner(config.qos, wyner->cross_gain, config.noise_power,
                         config.users_per_cell, grid, options);
  } else if (const auto* rect = std::get_if<RectGrid>(&config.geometry)) {
    if (!config.path_loss) throw std::invalid_argument("boundary_for: path loss model required");
    out = boundary_heterogeneous(config.qos, *rect, config.path_loss->alpha, config.noise_power,
                                 config.users_per_cell, grid, options);
  } else {
    throw std::invalid_argument("boundary_for: region sweeps need a two-cell model");
  }
  out.config = config;
  return out;
}

}  // namespace obfrank
