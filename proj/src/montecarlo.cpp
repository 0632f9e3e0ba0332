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

#include "obfrank/montecarlo.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace obfrank {

namespace {

using Complex = std::complex<double>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Complex complex_gaussian(std::normal_distribution<double>& normal, Rng& rng) {
  return {normal(rng), normal(rng)};
}

// (0, 1], so radii and distances stay positive.
double open_unit(Rng& rng) { return 1.0 - std::generate_canonical<double, 53>(rng); }

void check_ranks(const SystemConfig& config, std::span<const int> ranks) {
  if (static_cast<int>(ranks.size()) != cell_count(config.geometry))
    throw std::invalid_argument("montecarlo: need one rank per cell");
  for (int l : ranks)
    if (l < 1 || l > config.antennas)
      throw std::invalid_argument("montecarlo: ranks must lie in [1, antennas]");
}

}  // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL)));
}

Eigen::MatrixXcd draw_beams(int antennas, int rank, Rng& rng) {
  if (rank < 1 || rank > antennas)
    throw std::invalid_argument("draw_beams: rank must lie in [1, antennas]");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd g(antennas, rank);
  for (int c = 0; c < rank; ++c)
    for (int r = 0; r < antennas; ++r) g(r, c) = complex_gaussian(normal, rng);

  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(antennas, rank);
  const auto& r = qr.matrixQR();
  for (int c = 0; c < rank; ++c) {
    const double mag = std::abs(r(c, c));
    if (mag > 0.0) q.col(c) *= r(c, c) / mag;
  }
  return q;
}

Eigen::Vector2d bs_position(const CellGeometry& geometry, int cell) {
  if (std::holds_alternative<Disk>(geometry)) return Eigen::Vector2d::Zero();
  if (const auto* grid = std::get_if<RectGrid>(&geometry))
    return {grid->bs_x.at(static_cast<std::size_t>(cell)), 0.0};
  throw std::invalid_argument("bs_position: geometry has no locations");
}

std::vector<std::vector<Eigen::Vector2d>> draw_users(const CellGeometry& geometry, int users,
                                                     Rng& rng) {
  std::vector<std::vector<Eigen::Vector2d>> out;
  if (const auto* disk = std::get_if<Disk>(&geometry)) {
    auto& cell = out.emplace_back();
    cell.reserve(static_cast<std::size_t>(users));
    for (int k = 0; k < users; ++k) {
      const double r = disk->radius * std::sqrt(open_unit(rng));
      const double theta = 2.0 * std::numbers::pi * std::generate_canonical<double, 53>(rng);
      cell.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
    return out;
  }
  if (const auto* grid = std::get_if<RectGrid>(&geometry)) {
    const double d = grid->half_width;
    for (double x0 : grid->bs_x) {
      auto& cell = out.emplace_back();
      cell.reserve(static_cast<std::size_t>(users));
      for (int k = 0; k < users; ++k) {
        const double x = x0 + d * (2.0 * std::generate_canonical<double, 53>(rng) - 1.0);
        const double y = d * (2.0 * std::generate_canonical<double, 53>(rng) - 1.0);
        cell.emplace_back(x, y);
      }
    }
    return out;
  }
  throw std::invalid_argument("draw_users: geometry has no user locations");
}

Eigen::MatrixXd user_gains(const SystemConfig& config, int cell,
                           std::span<const Eigen::Vector2d> positions) {
  const int cells = cell_count(config.geometry);
  const auto users = static_cast<Eigen::Index>(positions.size());
  Eigen::MatrixXd g(users, cells);
  if (const auto* homo = std::get_if<Homogeneous>(&config.geometry)) {
    g.setConstant(homo->gain);
    return g;
  }
  if (const auto* wyner = std::get_if<Wyner>(&config.geometry)) {
    g.setConstant(wyner->cross_gain);
    g.col(cell).setOnes();
    return g;
  }
  if (!config.path_loss) throw std::invalid_argument("user_gains: path loss model required");
  const double alpha = config.path_loss->alpha;
  for (int j = 0; j < cells; ++j) {
    const Eigen::Vector2d bs = bs_position(config.geometry, j);
    for (Eigen::Index k = 0; k < users; ++k) {
      const double d2 = (positions[static_cast<std::size_t>(k)] - bs).squaredNorm();
      g(k, j) = std::exp(-0.5 * alpha * std::log(d2));
    }
  }
  return g;
}

ScenarioDraw draw_scenario(const SystemConfig& config, std::span<const int> ranks, Rng& rng) {
  check_ranks(config, ranks);
  const int cells = cell_count(config.geometry);
  const int users = config.users_per_cell;
  ScenarioDraw draw;

  if (has_user_locations(config.geometry)) {
    const auto positions = draw_users(config.geometry, users, rng);
    for (int i = 0; i < cells; ++i)
      draw.gains.push_back(user_gains(config, i, positions[static_cast<std::size_t>(i)]));
  } else {
    const std::vector<Eigen::Vector2d> none(static_cast<std::size_t>(users),
                                            Eigen::Vector2d::Zero());
    for (int i = 0; i < cells; ++i) draw.gains.push_back(user_gains(config, i, none));
  }

  for (int j = 0; j < cells; ++j)
    draw.beams.push_back(draw_beams(config.antennas, ranks[static_cast<std::size_t>(j)], rng));

  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  draw.channels.resize(static_cast<std::size_t>(cells));
  for (auto& cell : draw.channels) {
    cell.reserve(static_cast<std::size_t>(users));
    for (int k = 0; k < users; ++k) {
      Eigen::MatrixXcd h(config.antennas, cells);
      for (int j = 0; j < cells; ++j)
        for (int a = 0; a < config.antennas; ++a) h(a, j) = complex_gaussian(normal, rng);
      cell.push_back(std::move(h));
    }
  }
  return draw;
}

std::vector<Eigen::MatrixXd> sinr_sample(const ScenarioDraw& draw, std::span<const int> ranks,
                                         double noise) {
  const auto cells = draw.beams.size();
  std::vector<Eigen::MatrixXd> out(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const int own_rank = ranks[i];
    const auto users = static_cast<Eigen::Index>(draw.channels[i].size());
    Eigen::MatrixXd& sinr = out[i];
    sinr.resize(users, own_rank);
    for (Eigen::Index k = 0; k < users; ++k) {
      const Eigen::MatrixXcd& h = draw.channels[i][static_cast<std::size_t>(k)];
      const Eigen::RowVectorXd own_power =
          (h.col(static_cast<Eigen::Index>(i)).transpose() * draw.beams[i]).cwiseAbs2();
      const double own_gain = draw.gains[i](k, static_cast<Eigen::Index>(i));
      double inter = 0.0;
      for (std::size_t j = 0; j < cells; ++j) {
        if (j == i) continue;
        const double power =
            (h.col(static_cast<Eigen::Index>(j)).transpose() * draw.beams[j]).cwiseAbs2().sum();
        inter += draw.gains[i](k, static_cast<Eigen::Index>(j)) *
                 (static_cast<double>(own_rank) / ranks[j]) * power;
      }
      // Intra-cell interference summed term by term; total - own would cancel
      // badly whenever one stream dominates.
      for (int m = 0; m < own_rank; ++m) {
        double others = 0.0;
        for (int q = 0; q < own_rank; ++q)
          if (q != m) others += own_power(q);
        const double signal = own_gain * own_power(m);
        sinr(k, m) = signal / (noise * own_rank + own_gain * others + inter);
      }
    }
  }
#ifndef NDEBUG
  const auto reference = sinr_from_signal_model(draw, ranks, noise);
  for (std::size_t i = 0; i < cells; ++i)
    assert(((out[i] - reference[i]).array().abs() <= 1e-12 * reference[i].array().abs()).all());
#endif
  return out;
}

std::vector<Eigen::MatrixXd> sinr_from_signal_model(const ScenarioDraw& draw,
                                                    std::span<const int> ranks, double noise) {
  const auto cells = draw.beams.size();
  std::vector<Eigen::MatrixXd> out(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const auto users = static_cast<Eigen::Index>(draw.channels[i].size());
    out[i].resize(users, ranks[i]);
    for (Eigen::Index k = 0; k < users; ++k) {
      const Eigen::MatrixXcd& h = draw.channels[i][static_cast<std::size_t>(k)];
      // Complex amplitude of every stream of every BS at this receiver.
      std::vector<Eigen::RowVectorXcd> amplitude(cells);
      double other_cells = 0.0;
      for (std::size_t j = 0; j < cells; ++j) {
        const double scale =
            std::sqrt(draw.gains[i](k, static_cast<Eigen::Index>(j)) / ranks[j]);
        amplitude[j] = scale * (h.col(static_cast<Eigen::Index>(j)).transpose() * draw.beams[j]);
        if (j != i) other_cells += amplitude[j].squaredNorm();
      }
      for (int m = 0; m < ranks[i]; ++m) {
        double interference = other_cells;
        for (int q = 0; q < ranks[i]; ++q)
          if (q != m) interference += std::norm(amplitude[i](q));
        out[i](k, m) = std::norm(amplitude[i](m)) / (interference + noise);
      }
    }
  }
  return out;
}

TrialConfig TrialConfig::from_ranks(const SystemConfig& system, const RankTuple& ranks,
                                    std::int64_t trials, std::uint64_t seed) {
  TrialConfig tc;
  tc.system = system;
  tc.ranks = ranks.integer();
  tc.trials = trials;
  tc.seed = seed;
  return tc;
}

OutageEstimate estimate_outage(const TrialConfig& config, double eta, int threads) {
  if (config.trials < 1) throw std::invalid_argument("estimate_outage: trials must be positive");
  check_ranks(config.system, config.ranks);
  const int cells = cell_count(config.system.geometry);
  if (config.observed_cell < 0 || config.observed_cell >= cells)
    throw std::invalid_argument("estimate_outage: observed cell out of range");
  const double noise = config.system.noise_power * config.noise_scale;

  auto run_block = [&](std::int64_t begin, std::int64_t end, std::vector<std::int64_t>& counts) {
    for (std::int64_t t = begin; t < end; ++t) {
      Rng rng = trial_rng(config.seed, static_cast<std::uint64_t>(t));
      const ScenarioDraw draw = draw_scenario(config.system, config.ranks, rng);
      const auto sinr = sinr_sample(draw, config.ranks, noise);
      for (int i = 0; i < cells; ++i) {
        const auto ci = static_cast<std::size_t>(i);
        int beam = 0;
        if (config.beam == BeamChoice::kUniform)
          beam = std::uniform_int_distribution<int>(0, config.ranks[ci] - 1)(rng);
        if (sinr[ci].col(beam).maxCoeff() <= eta) ++counts[ci];
      }
    }
  };

  const auto workers = static_cast<std::int64_t>(
      std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(1, config.trials / 64)));
  std::vector<std::vector<std::int64_t>> counts(static_cast<std::size_t>(workers),
                                                std::vector<std::int64_t>(cells, 0));
  if (workers == 1) {
    run_block(0, config.trials, counts[0]);
  } else {
    std::vector<std::thread> pool;
    for (std::int64_t w = 0; w < workers; ++w) {
      const std::int64_t begin = config.trials * w / workers;
      const std::int64_t end = config.trials * (w + 1) / workers;
      pool.emplace_back(run_block, begin, end, std::ref(counts[static_cast<std::size_t>(w)]));
    }
    for (auto& t : pool) t.join();
  }

  OutageEstimate est;
  est.trials = config.trials;
  const auto n = static_cast<double>(config.trials);
  for (int i = 0; i < cells; ++i) {
    std::int64_t total = 0;
    for (const auto& c : counts) total += c[static_cast<std::size_t>(i)];
    const double p = static_cast<double>(total) / n;
    est.per_cell.push_back({p, std::sqrt(p * (1.0 - p) / n)});
  }
  est.p_hat = est.per_cell[static_cast<std::size_t>(config.observed_cell)].p_hat;
  est.std_err = est.per_cell[static_cast<std::size_t>(config.observed_cell)].std_err;
  return est;
}

}  // namespace obfrank
