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

#include <cmath>
#include <numbers>
#include <random>

#include "obfrank/special_fn.hpp"
#include "oracles.hpp"

using obfrank::lambert_w0;
using obfrank::lambert_w0_exp;
using obfrank::lower_incomplete_gamma;

TEST_CASE("lambert_w0 fixed points") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::numbers::e) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lambert_w0(-1.0 / std::numbers::e) == -1.0);
}

TEST_CASE("lambert_w0(1) matches the Newton oracle") {
  const double oracle = oracles::lambert_w_newton(1.0, 0.5);
  CHECK(std::abs(oracle - 0.5671432904097838) < 1e-15);
  CHECK(std::abs(lambert_w0(1.0) - oracle) < 1e-14);
}

TEST_CASE("lambert_w0 defining-equation residual on [0, 1e6]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_x(-12.0, 6.0);
  for (int i = 0; i < 5000; ++i) {
    const double x = std::pow(10.0, log_x(rng));
    const double w = lambert_w0(x);
    CHECK(w >= 0.0);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, x));
  }
  for (double x : {1e-300, 1e-20, 0.25, 2.5, 2.7, 2.8, 1e6}) {
    const double w = lambert_w0(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, x));
  }
}

TEST_CASE("lambert_w0 on the principal branch below zero") {
  for (double x : {-0.36, -0.3, -0.2, -0.1, -1e-8}) {
    const double w = lambert_w0(x);
    CHECK(w >= -1.0);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-13);
  }
  CHECK_THROWS_AS(lambert_w0(-0.4), std::domain_error);
}

TEST_CASE("lambert_w0_exp agrees with lambert_w0 and extends past overflow") {
  for (double s : {-5.0, 0.0, 3.0, 50.0, 299.0}) {
    CHECK(lambert_w0_exp(s) == doctest::Approx(lambert_w0(std::exp(s))).epsilon(1e-14));
  }
  for (double s : {301.0, 1e3, 1e5}) {
    const double w = lambert_w0_exp(s);
    CHECK(std::abs(w + std::log(w) - s) <= 1e-12 * s);
  }
}

TEST_CASE("lower incomplete gamma with a = 1 is 1 - e^-x") {
  for (double x : {0.5, 1.0, 2.0, 5.0, 30.0}) {
    CHECK(std::abs(lower_incomplete_gamma(1.0, x) - (1.0 - std::exp(-x))) <= 1e-12);
  }
  CHECK(lower_incomplete_gamma(2.5, 0.0) == 0.0);
}

TEST_CASE("lower incomplete gamma(1/2, 1) matches the erf series") {
  const double oracle = std::sqrt(std::numbers::pi) * oracles::erf_series(1.0);
  CHECK(std::abs(oracle - 1.493648265624854) < 1e-12);
  CHECK(std::abs(lower_incomplete_gamma(0.5, 1.0) - oracle) <= 1e-10 * oracle);
  for (double x : {0.01, 0.3, 2.0, 4.0}) {
    const double ref = std::sqrt(std::numbers::pi) * oracles::erf_series(std::sqrt(x));
    CHECK(std::abs(lower_incomplete_gamma(0.5, x) - ref) <= 1e-10 * ref);
  }
}

TEST_CASE("lower incomplete gamma is monotone and tends to Gamma(a)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> shape(0.05, 10.0);
  std::uniform_real_distribution<double> arg(0.0, 40.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = shape(rng);
    double x1 = arg(rng), x2 = arg(rng);
    if (x1 > x2) std::swap(x1, x2);
    CHECK(lower_incomplete_gamma(a, x1) <= lower_incomplete_gamma(a, x2));
  }
  for (double a : {0.1, 0.5, 2.0 / 3.0, 1.0, 2.5, 7.0, 10.0}) {
    const double gamma = oracles::lanczos_gamma(a);
    CHECK(std::abs(lower_incomplete_gamma(a, 700.0) - gamma) <= 1e-8 * gamma);
  }
}

TEST_CASE("series and continued fraction agree at the switch point") {
  for (double a : {0.2, 2.0 / 3.0, 1.0, 3.3, 10.0}) {
    const double x = a + 1.0;
    const double series = obfrank::detail::lower_gamma_series(a, x);
    const double cf = std::tgamma(a) - obfrank::detail::upper_gamma_continued_fraction(a, x);
    CHECK(std::abs(series - cf) <= 1e-10 * series);
  }
}

TEST_CASE("lower incomplete gamma domain errors") {
  CHECK_THROWS_AS(lower_incomplete_gamma(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(lower_incomplete_gamma(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(lower_incomplete_gamma(1.0, -0.5), std::domain_error);
}

TEST_CASE("special functions instantiate for long double") {
  CHECK(std::abs(lambert_w0(1.0L) - 0.56714329040978387300L) < 1e-17L);
  CHECK(std::abs(lower_incomplete_gamma(1.0L, 2.0L) - (1.0L - std::exp(-2.0L))) < 1e-16L);
}
