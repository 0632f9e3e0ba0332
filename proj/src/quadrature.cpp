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

#include "obfrank/quadrature.hpp"

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace obfrank {

namespace {

constexpr int kNodes = 15;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxDepth1d = 60;
constexpr int kMaxDepth2d = 40;

// QUADPACK qk15 abscissae and weights, listed from the outermost node inward.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule {
  Eigen::Array<double, kNodes, 1> nodes;
  Eigen::Array<double, kNodes, 1> kronrod;
  Eigen::Array<double, kNodes, 1> gauss;  // zero on Kronrod-only nodes
};

Rule make_rule() {
  Rule r;
  for (int i = 0; i < 8; ++i) {
    const double wg = (i % 2 == 1) ? kWg[static_cast<std::size_t>(i / 2)] : 0.0;
    r.nodes(i) = -kXgk[static_cast<std::size_t>(i)];
    r.nodes(kNodes - 1 - i) = kXgk[static_cast<std::size_t>(i)];
    r.kronrod(i) = r.kronrod(kNodes - 1 - i) = kWgk[static_cast<std::size_t>(i)];
    r.gauss(i) = r.gauss(kNodes - 1 - i) = wg;
  }
  return r;
}

const Rule& rule() {
  static const Rule r = make_rule();
  return r;
}

struct Panel {
  double kronrod = 0.0;
  double error = 0.0;
  double abs_sum = 0.0;
};

Panel panel_1d(const std::function<double(double)>& f, double a, double b) {
  const Rule& r = rule();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Eigen::Array<double, kNodes, 1> values;
  for (int i = 0; i < kNodes; ++i) values(i) = f(center + half * r.nodes(i));
  const double k = (r.kronrod * values).sum() * half;
  const double g = (r.gauss * values).sum() * half;
  return {k, std::abs(k - g), (r.kronrod * values.abs()).sum() * std::abs(half)};
}

Panel panel_2d(const std::function<double(double, double)>& f, const Rect& rect) {
  const Rule& r = rule();
  const Eigen::Vector2d center = rect.center();
  const Eigen::Vector2d half = 0.5 * rect.sizes();
  Eigen::Matrix<double, kNodes, kNodes> values;
  for (int i = 0; i < kNodes; ++i) {
    const double x = center.x() + half.x() * r.nodes(i);
    for (int j = 0; j < kNodes; ++j) values(i, j) = f(x, center.y() + half.y() * r.nodes(j));
  }
  const double area = half.x() * half.y();
  const auto wk = r.kronrod.matrix();
  const auto wg = r.gauss.matrix();
  const double k = wk.dot(values * wk) * area;
  const double g = wg.dot(values * wg) * area;
  const double abs_sum = wk.dot(values.cwiseAbs() * wk) * area;
  return {k, std::abs(k - g), abs_sum};
}

bool at_roundoff(const Panel& p) { return p.error <= 50.0 * kEps * p.abs_sum; }

// Globally adaptive bisection: always split the panel with the largest error
// estimate. The split sequence does not depend on tol, so a tighter tol only
// ever refines the partition a looser one stops at.
template <typename Domain, typename Eval, typename Split>
QuadResult adapt(const Domain& whole, double tol, std::int64_t budget, int max_depth,
                 int children, Eval eval, Split split, const char* name) {
  struct Node {
    Domain domain;
    Panel panel;
    int depth = 0;
  };
  const std::int64_t per_panel = eval.nodes;
  std::vector<Node> nodes;
  nodes.push_back({whole, eval(whole), 0});
  std::int64_t evaluations = per_panel;

  auto cmp = [&](std::size_t a, std::size_t b) {
    const double ea = nodes[a].panel.error, eb = nodes[b].panel.error;
    return ea != eb ? ea < eb : a > b;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> queue(cmp);
  auto splittable = [&](const Node& n) { return !at_roundoff(n.panel) && n.depth < max_depth; };
  if (splittable(nodes[0])) queue.push(0);

  auto totals = [&] {
    QuadResult r;
    double floor = 0.0;
    for (const Node& n : nodes) {
      r.value += n.panel.kronrod;
      r.error_estimate += n.panel.error;
      if (at_roundoff(n.panel)) floor += n.panel.error;
    }
    r.evaluations = evaluations;
    return std::pair{r, floor};
  };

  double running_error = nodes[0].panel.error;
  while (!queue.empty()) {
    if (running_error <= tol) {
      // Resum exactly; the running total drifts under repeated subtraction.
      running_error = totals().first.error_estimate;
      if (running_error <= tol) break;
    }
    if (evaluations + children * per_panel > budget) break;
    const std::size_t worst = queue.top();
    queue.pop();
    const Node parent = nodes[worst];
    running_error -= parent.panel.error;
    const auto parts = split(parent.domain);
    for (std::size_t c = 0; c < parts.size(); ++c) {
      Node child{parts[c], eval(parts[c]), parent.depth + 1};
      evaluations += per_panel;
      running_error += child.panel.error;
      std::size_t slot = worst;
      if (c == 0) {
        nodes[worst] = child;
      } else {
        slot = nodes.size();
        nodes.push_back(child);
      }
      if (splittable(nodes[slot])) queue.push(slot);
    }
  }

  const auto [result, floor] = totals();
  if (result.error_estimate > tol && result.error_estimate - floor > tol)
    throw QuadratureError(std::string(name) + ": tolerance not reached, error estimate " +
                              std::to_string(result.error_estimate),
                          result);
  return result;
}

}  // namespace

QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b, double tol,
                        std::int64_t max_evaluations) {
  if (!(a <= b)) throw std::invalid_argument("integrate_1d: requires a <= b");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_1d: tol must be positive");
  if (a == b) return {};
  struct Eval {
    const std::function<double(double)>& f;
    std::int64_t nodes = kNodes;
    Panel operator()(const std::array<double, 2>& s) const { return panel_1d(f, s[0], s[1]); }
  };
  auto split = [](const std::array<double, 2>& s) {
    const double mid = 0.5 * (s[0] + s[1]);
    return std::array<std::array<double, 2>, 2>{{{s[0], mid}, {mid, s[1]}}};
  };
  return adapt(std::array<double, 2>{a, b}, tol, max_evaluations, kMaxDepth1d, 2, Eval{f},
               split, "integrate_1d");
}

QuadResult integrate_2d(const std::function<double(double, double)>& f, const Rect& rect,
                        double tol, std::int64_t max_evaluations) {
  if (rect.isEmpty() || !(rect.volume() > 0.0))
    throw std::invalid_argument("integrate_2d: degenerate rectangle");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_2d: tol must be positive");
  struct Eval {
    const std::function<double(double, double)>& f;
    std::int64_t nodes = kNodes * kNodes;
    Panel operator()(const Rect& r) const { return panel_2d(f, r); }
  };
  auto split = [](const Rect& r) {
    const Eigen::Vector2d lo = r.min(), hi = r.max(), mid = r.center();
    return std::array<Rect, 4>{
        Rect(lo, mid), Rect(Eigen::Vector2d(mid.x(), lo.y()), Eigen::Vector2d(hi.x(), mid.y())),
        Rect(Eigen::Vector2d(lo.x(), mid.y()), Eigen::Vector2d(mid.x(), hi.y())), Rect(mid, hi)};
  };
  return adapt(rect, tol, max_evaluations, kMaxDepth2d, 4, Eval{f}, split, "integrate_2d");
}

}  // namespace obfrank
