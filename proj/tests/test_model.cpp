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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "obfrank/model.hpp"

using namespace obfrank;

namespace {

bool mentions(const std::vector<std::string>& violations, const std::string& needle) {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

SystemConfig two_cell_grid() {
  SystemConfig c;
  c.cells = 2;
  c.users_per_cell = 10;
  c.noise_power = 0.01;
  c.geometry = RectGrid::adjacent(2.0, 2);
  c.path_loss = PathLossModel{3.0};
  c.qos = {4.0, 0.1};
  return c;
}

}  // namespace

TEST_CASE("integerize floors and caps") {
  CHECK(integerize(std::vector<double>{2.9, 3.0}, 4) == std::vector<int>{2, 3});
  CHECK(integerize(std::vector<double>{7.5}, 4) == std::vector<int>{4});
  CHECK(integerize(std::vector<double>{1.0, 1.999}, 2) == std::vector<int>{1, 1});
  CHECK_THROWS_AS(integerize(std::vector<double>{0.99}, 4), std::domain_error);
}

TEST_CASE("integerize is monotone and idempotent") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> rank(1.0, 12.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> lo(3), hi(3);
    for (int i = 0; i < 3; ++i) {
      const double a = rank(rng), b = rank(rng);
      lo[static_cast<std::size_t>(i)] = std::min(a, b);
      hi[static_cast<std::size_t>(i)] = std::max(a, b);
    }
    const auto il = integerize(lo, 8);
    const auto ih = integerize(hi, 8);
    for (std::size_t i = 0; i < 3; ++i) CHECK(il[i] <= ih[i]);
    const std::vector<double> as_real(il.begin(), il.end());
    CHECK(integerize(as_real, 8) == il);
  }
}

TEST_CASE("RankTuple derives its integer ranks") {
  const RankTuple t({2.5, 9.1}, 8);
  CHECK(t.integer() == std::vector<int>{2, 8});
  CHECK(t.relaxed() == std::vector<double>{2.5, 9.1});
  CHECK_THROWS(RankTuple({0.5}, 8));
}

TEST_CASE("adjacent grid places BSs at (2i-1)D") {
  const RectGrid g = RectGrid::adjacent(2.0, 3);
  CHECK(g.bs_x == std::vector<double>{2.0, 6.0, 10.0});
}

TEST_CASE("validate accepts the two-cell reference scenario") {
  CHECK(validate(two_cell_grid()).empty());
}

TEST_CASE("validate reports every violation") {
  SystemConfig c = two_cell_grid();
  c.path_loss = PathLossModel{2.0};
  CHECK(mentions(validate(c), "alpha must exceed 2"));

  c = two_cell_grid();
  c.qos.p = 0.0;
  CHECK(mentions(validate(c), "p in open interval (0,1)"));

  c = two_cell_grid();
  c.qos.p = 1.0;
  c.qos.eta = -1.0;
  c.users_per_cell = 0;
  c.cells = 3;
  const auto v = validate(c);
  CHECK(v.size() >= 4);
  CHECK(mentions(v, "p in open interval"));
  CHECK(mentions(v, "eta must be positive"));
  CHECK(mentions(v, "users_per_cell"));
  CHECK(mentions(v, "cells does not match geometry"));
}

TEST_CASE("validate checks geometry invariants") {
  SystemConfig c = two_cell_grid();
  c.geometry = RectGrid{2.0, {2.0, 5.0}};
  CHECK(mentions(validate(c), "spacing"));
  c.geometry = RectGrid{2.0, {6.0, 2.0}};
  CHECK(mentions(validate(c), "strictly increasing"));

  SystemConfig w;
  w.cells = 2;
  w.geometry = Wyner{-0.1};
  CHECK(mentions(validate(w), "cross gain"));

  SystemConfig d;
  d.cells = 1;
  d.geometry = Disk{2.0};
  CHECK(mentions(validate(d), "path loss model required"));
  d.path_loss = PathLossModel{3.0};
  CHECK(validate(d).empty());
  d.geometry = Disk{0.0};
  CHECK(mentions(validate(d), "radius"));
}

TEST_CASE("cell counts follow the geometry") {
  CHECK(cell_count(Disk{1.0}) == 1);
  CHECK(cell_count(Homogeneous{}) == 1);
  CHECK(cell_count(Wyner{0.1}) == 2);
  CHECK(cell_count(RectGrid::adjacent(1.0, 4)) == 4);
}
