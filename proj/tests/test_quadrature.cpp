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
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "obfrank/quadrature.hpp"
#include "obfrank/special_fn.hpp"
#include "oracles.hpp"

using obfrank::integrate_1d;
using obfrank::integrate_2d;
using obfrank::QuadratureError;
using obfrank::Rect;

namespace {

Rect box(double x0, double x1, double y0, double y1) {
  return Rect(Eigen::Vector2d(x0, y0), Eigen::Vector2d(x1, y1));
}

}  // namespace

TEST_CASE("1-D basics") {
  const auto one = integrate_1d([](double) { return 1.0; }, 0.0, 1.0, 1e-12);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one.evaluations > 0);
  CHECK(one.error_estimate >= 0.0);
  const auto s = integrate_1d([](double t) { return std::sin(t); }, 0.0, std::numbers::pi, 1e-12);
  CHECK(std::abs(s.value - 2.0) < 1e-12);
}

TEST_CASE("1-D path-loss integral matches the incomplete-gamma closed form") {
  const double c = 4.0 * 0.01 * 2.0;  // eta * noise * L
  const double d = 2.0;
  const auto r = integrate_1d([&](double t) { return std::exp(-c * std::pow(t, 1.5)); }, 0.0,
                              d * d, 1e-12);
  const double closed =
      (2.0 / 3.0) * std::pow(c, -2.0 / 3.0) * obfrank::lower_incomplete_gamma(2.0 / 3.0, c * d * d * d);
  CHECK(std::abs(r.value - closed) <= 1e-9);
}

TEST_CASE("2-D basics") {
  const auto one = integrate_2d([](double, double) { return 1.0; }, box(0, 2, 0, 2), 1e-12);
  CHECK(one.value == doctest::Approx(4.0).epsilon(1e-15));
  const auto sep = integrate_2d([](double x, double y) { return std::exp(-x) * std::exp(-y); },
                                box(0, 1, 0, 1), 1e-12);
  const double expected = (1.0 - std::exp(-1.0)) * (1.0 - std::exp(-1.0));
  CHECK(std::abs(sep.value - expected) < 1e-13);
}

TEST_CASE("2-D two-cell integrand agrees with plain Monte-Carlo integration") {
  const double d = 2.0, x1 = 2.0, x2 = 6.0;
  auto f = [&](double x, double y) {
    return oracles::omega_integrand(x, y, x1, x2, 4.0, 0.01, 3.0, 2.0, 2.0);
  };
  const auto q = integrate_2d(f, box(x1 - d, x1 + d, -d, d), 1e-8);
  const auto mc = oracles::mc_integrate_rect(f, x1 - d, x1 + d, -d, d, 1'000'000, 2024);
  CHECK(std::abs(q.value - mc.value) <= 3.0 * mc.std_err);
}

TEST_CASE("linearity and additivity") {
  auto f = [](double t) { return std::exp(-t * t) * std::cos(3.0 * t); };
  const double c = 3.7;
  const auto base = integrate_1d(f, -1.0, 2.0, 1e-11);
  const auto scaled = integrate_1d([&](double t) { return c * f(t); }, -1.0, 2.0, c * 1e-11);
  CHECK(std::abs(scaled.value - c * base.value) <= 1e-12 * std::abs(c * base.value));

  const auto whole = integrate_1d(f, -1.0, 2.0, 1e-13);
  const auto left = integrate_1d(f, -1.0, 0.4, 1e-13);
  const auto right = integrate_1d(f, 0.4, 2.0, 1e-13);
  CHECK(std::abs(whole.value - (left.value + right.value)) <= 1e-10);

  auto g = [](double x, double y) { return std::exp(-x * y) + x * x; };
  const auto g_all = integrate_2d(g, box(0, 2, 0, 1), 1e-12);
  const auto g_lo = integrate_2d(g, box(0, 0.7, 0, 1), 1e-12);
  const auto g_hi = integrate_2d(g, box(0.7, 2, 0, 1), 1e-12);
  CHECK(std::abs(g_all.value - (g_lo.value + g_hi.value)) <= 1e-10);
  const auto g_scaled =
      integrate_2d([&](double x, double y) { return c * g(x, y); }, box(0, 2, 0, 1), c * 1e-12);
  CHECK(std::abs(g_scaled.value - c * g_all.value) <= 1e-12 * std::abs(c * g_all.value));
}

TEST_CASE("tightening tol never increases the actual error") {
  struct Case {
    std::function<double(double)> f;
    double a, b, exact;
  };
  const std::vector<Case> cases = {
      {[](double t) { return std::sqrt(t); }, 0.0, 1.0, 2.0 / 3.0},
      {[](double t) { return 1.0 / (1.0 + 25.0 * t * t); }, -1.0, 1.0, 0.4 * std::atan(5.0)},
      {[](double t) { return std::exp(-0.08 * std::pow(t, 1.25)); }, 0.0, 4.0,
       0.8 * std::pow(0.08, -0.8) * obfrank::lower_incomplete_gamma(0.8, 0.08 * std::pow(4.0, 1.25))},
  };
  for (const auto& c : cases) {
    double previous = std::numeric_limits<double>::infinity();
    for (double tol = 1e-3; tol >= 1e-11; tol /= 10.0) {
      const double err = std::abs(integrate_1d(c.f, c.a, c.b, tol).value - c.exact);
      CHECK(err <= previous + 1e-15);
      CHECK(err <= std::max(tol, 1e-14));
      previous = err;
    }
  }
  double previous = std::numeric_limits<double>::infinity();
  const double exact2 = std::pow(2.0 / 3.0, 2);
  for (double tol = 1e-3; tol >= 1e-9; tol /= 10.0) {
    const double err = std::abs(
        integrate_2d([](double x, double y) { return std::sqrt(x * y); }, box(0, 1, 0, 1), tol)
            .value -
        exact2);
    CHECK(err <= previous + 1e-15);
    previous = err;
  }
}

TEST_CASE("budget exhaustion reports the best estimate") {
  auto spiky = [](double t) { return 1.0 / std::sqrt(std::abs(t - 0.3) + 1e-12); };
  try {
    integrate_1d(spiky, 0.0, 1.0, 1e-14, 200);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.best().evaluations > 0);
    CHECK(e.best().evaluations <= 200);
    CHECK(e.best().error_estimate > 1e-14);
    CHECK(std::isfinite(e.best().value));
  }
  CHECK_THROWS_AS(integrate_1d(spiky, 1.0, 0.0, 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(integrate_2d([](double, double) { return 1.0; }, box(0, 0, 0, 1), 1e-8),
                  std::invalid_argument);
}
