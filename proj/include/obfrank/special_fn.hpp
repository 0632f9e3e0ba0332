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

#ifndef OBFRANK_SPECIAL_FN_HPP_
#define OBFRANK_SPECIAL_FN_HPP_

#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace obfrank {

namespace detail {

template <std::floating_point Scalar>
Scalar lambert_w0_initial_guess(Scalar x) {
  using std::numbers::e_v;
  if (x < Scalar(-0.25)) {
    // Branch-point expansion around -1/e.
    const Scalar q = std::sqrt(Scalar(2) * (Scalar(1) + e_v<Scalar> * x));
    return Scalar(-1) + q - q * q / Scalar(3);
  }
  if (x < Scalar(0.25)) return x * (Scalar(1) - x);
  if (x > e_v<Scalar>) {
    const Scalar l1 = std::log(x);
    return l1 - std::log(l1);
  }
  return std::log1p(x);
}

}  // namespace detail

/// Principal branch of the Lambert-W function, the w >= -1 solving w e^w = x.
///
/// Halley iteration from a piecewise initial guess. Defined for x >= -1/e;
/// throws std::domain_error below that.
template <std::floating_point Scalar>
Scalar lambert_w0(Scalar x) {
  constexpr Scalar branch_point = Scalar(-1) / std::numbers::e_v<Scalar>;
  if (std::isnan(x)) throw std::domain_error("lambert_w0: NaN argument");
  if (x < branch_point) throw std::domain_error("lambert_w0: argument below -1/e");
  if (x == Scalar(0)) return Scalar(0);
  if (x == branch_point) return Scalar(-1);
  if (std::isinf(x)) return x;

  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  Scalar w = detail::lambert_w0_initial_guess(x);
  for (int iter = 0; iter < 64; ++iter) {
    const Scalar ew = std::exp(w);
    const Scalar f = w * ew - x;
    const Scalar wp1 = w + Scalar(1);
    if (wp1 == Scalar(0)) break;
    const Scalar step = f / (ew * wp1 - (w + Scalar(2)) * f / (Scalar(2) * wp1));
    w -= step;
    if (std::abs(step) <= Scalar(4) * eps * (Scalar(1) + std::abs(w))) break;
  }
  return w;
}

/// W(exp(log_x)) for arguments whose exponential would overflow.
///
/// Solves w + log(w) = log_x by Newton for large log_x; otherwise defers to
/// lambert_w0.
template <std::floating_point Scalar>
Scalar lambert_w0_exp(Scalar log_x) {
  if (log_x < Scalar(300)) return lambert_w0(std::exp(log_x));
  Scalar w = log_x - std::log(log_x);
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  for (int iter = 0; iter < 64; ++iter) {
    const Scalar step = (w + std::log(w) - log_x) * w / (w + Scalar(1));
    w -= step;
    if (std::abs(step) <= Scalar(4) * eps * w) break;
  }
  return w;
}

namespace detail {

// gamma(a, x) by the power series; converges for all x, fastest for x < a + 1.
template <std::floating_point Scalar>
Scalar lower_gamma_series(Scalar a, Scalar x) {
  if (x == Scalar(0)) return Scalar(0);
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  Scalar term = Scalar(1) / a;
  Scalar sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (a + Scalar(n));
    sum += term;
    if (std::abs(term) < std::abs(sum) * eps) break;
  }
  return std::exp(a * std::log(x) - x + std::log(sum));
}

// Gamma(a, x) by the Legendre continued fraction (modified Lentz); for x >= a + 1.
template <std::floating_point Scalar>
Scalar upper_gamma_continued_fraction(Scalar a, Scalar x) {
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  constexpr Scalar tiny = std::numeric_limits<Scalar>::min() / eps;
  Scalar b = x + Scalar(1) - a;
  Scalar c = Scalar(1) / tiny;
  Scalar d = Scalar(1) / b;
  Scalar h = d;
  for (int i = 1; i < 100000; ++i) {
    const Scalar an = -Scalar(i) * (Scalar(i) - a);
    b += Scalar(2);
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = Scalar(1) / d;
    const Scalar delta = d * c;
    h *= delta;
    if (std::abs(delta - Scalar(1)) < eps) break;
  }
  return std::exp(a * std::log(x) - x) * h;
}

}  // namespace detail

/// Lower incomplete gamma function, the integral of t^(a-1) e^(-t) over [0, x].
template <std::floating_point Scalar>
Scalar lower_incomplete_gamma(Scalar a, Scalar x) {
  if (!(a > Scalar(0))) throw std::domain_error("lower_incomplete_gamma: a must be positive");
  if (!(x >= Scalar(0))) throw std::domain_error("lower_incomplete_gamma: x must be non-negative");
  if (x < a + Scalar(1)) return detail::lower_gamma_series(a, x);
  if (std::isinf(x)) return std::tgamma(a);
  return std::tgamma(a) - detail::upper_gamma_continued_fraction(a, x);
}

}  // namespace obfrank

#endif  // OBFRANK_SPECIAL_FN_HPP_
