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

#ifndef OBFRANK_QUADRATURE_HPP_
#define OBFRANK_QUADRATURE_HPP_

#include <Eigen/Geometry>

#include <cstdint>
#include <functional>
#include <stdexcept>

namespace obfrank {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
};

/// Thrown when the evaluation budget runs out before the tolerance is met.
/// Carries the best estimate reached.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadResult best)
      : std::runtime_error(what), best_(best) {}
  const QuadResult& best() const { return best_; }

 private:
  QuadResult best_;
};

using Rect = Eigen::AlignedBox2d;

// Both integrators use 7/15-point Gauss-Kronrod panels (tensor product in 2-D)
// and keep bisecting the panel with the largest |K - G| estimate until the
// summed estimate is within tol (absolute) or every remaining panel sits at its
// roundoff floor. The split order is fixed, so results are reproducible
// bit-for-bit.

QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b, double tol,
                        std::int64_t max_evaluations = 2'000'000);

QuadResult integrate_2d(const std::function<double(double, double)>& f, const Rect& rect,
                        double tol, std::int64_t max_evaluations = 20'000'000);

}  // namespace obfrank

#endif  // OBFRANK_QUADRATURE_HPP_
