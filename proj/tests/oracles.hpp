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

// Test-only reference computations. Each one follows a different route from
// the library code it checks: plain pow() arithmetic instead of log space,
// bisection instead of closed forms, series instead of fractions.

#ifndef OBFRANK_TESTS_ORACLES_HPP_
#define OBFRANK_TESTS_ORACLES_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>

namespace oracles {

inline double lambert_w_newton(double x, double w) {
  for (int i = 0; i < 200; ++i) {
    const double step = (w * std::exp(w) - x) / (std::exp(w) * (1.0 + w));
    w -= step;
    if (std::abs(w * std::exp(w) - x) < 1e-14 * std::max(1.0, x) && std::abs(step) < 1e-16)
      break;
  }
  return w;
}

inline double erf_series(double x) {
  double sum = 0.0;
  double power = x;      // x^(2n+1)
  double factorial = 1;  // n!
  for (int n = 0; n < 200; ++n) {
    if (n > 0) {
      power *= x * x;
      factorial *= n;
    }
    const double term = power / (factorial * (2 * n + 1));
    sum += (n % 2 == 0) ? term : -term;
    if (term < 1e-18 * std::abs(sum)) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

inline double lanczos_gamma(double z) {
  constexpr std::array<double, 9> p = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * z) * lanczos_gamma(1.0 - z));
  z -= 1.0;
  double x = p[0];
  for (int i = 1; i < 9; ++i) x += p[static_cast<std::size_t>(i)] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

/// Largest L in [lo, hi] with f(L) <= target for nondecreasing f; NaN when f(lo) > target.
inline double bisect_max(const std::function<double(double)>& f, double target, double lo,
                         double hi) {
  if (f(lo) > target) return std::nan("");
  if (f(hi) <= target) return hi;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) <= target ? lo : hi) = mid;
  }
  return lo;
}

// Outage expressions written directly with pow().

inline double outage_homogeneous(double eta, double l, double g, double noise, int k) {
  return std::pow(1.0 - std::exp(-eta * noise * l / g) / std::pow(eta + 1.0, l - 1.0), k);
}

inline double outage_wyner(double eta, double l1, double l2, double g, double noise, int k) {
  const double denom = std::pow(eta + 1.0, l1 - 1.0) * std::pow(l1 / l2 * g * eta + 1.0, l2);
  return std::pow(1.0 - std::exp(-eta * noise * l1) / denom, k);
}

/// Plain Monte-Carlo mean of f over a rectangle, with its standard error.
struct McIntegral {
  double value;
  double std_err;
};

inline McIntegral mc_integrate_rect(const std::function<double(double, double)>& f, double x0,
                                    double x1, double y0, double y1, int samples,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double v = f(ux(rng), uy(rng));
    sum += v;
    sum2 += v * v;
  }
  const double area = (x1 - x0) * (y1 - y0);
  const double mean = sum / samples;
  const double var = std::max(0.0, sum2 / samples - mean * mean);
  return {area * mean, area * std::sqrt(var / samples)};
}

/// Integrand of the two-cell location average, with BS positions explicit.
inline double omega_integrand(double x, double y, double own_x, double other_x, double eta,
                              double noise, double alpha, double own_rank, double other_rank) {
  const double d_own = std::hypot(x - own_x, y);
  const double d_other = std::hypot(x - other_x, y);
  const double num = std::exp(-eta * noise * own_rank * std::pow(d_own, alpha));
  const double den =
      std::pow(std::pow(d_own / d_other, alpha) * own_rank / other_rank * eta + 1.0, other_rank);
  return num / den;
}

}  // namespace oracles

#endif  // OBFRANK_TESTS_ORACLES_HPP_
