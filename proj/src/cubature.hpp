#pragma once

// Collapsed-product Gauss rules on simplices, red refinement, and a
// worst-cell-first adaptive driver. Internal to the trunc module; exposed to
// the unit tests.

#include <array>
#include <cmath>
#include <queue>
#include <tuple>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace isv::detail {

/// Gauss-Jacobi nodes/weights on [0, 1] for the weight (1 - u)^alpha.
void gauss_jacobi01(int n, double alpha, std::vector<double>& nodes, std::vector<double>& weights);

struct TetRulePoint {
  double x, y, z;  // standard simplex coordinates
  double w;        // weights sum to 1/6
};

struct TriRulePoint {
  double x, y;  // standard triangle coordinates
  double w;     // weights sum to 1/2
};

/// 27-point rule on {x, y, z >= 0, x + y + z <= 1}, exact for total degree <= 5.
const std::vector<TetRulePoint>& tet_rule();
/// 9-point rule on {x, y >= 0, x + y <= 1}, exact for total degree <= 5.
const std::vector<TriRulePoint>& tri_rule();

using Tet = std::array<Eigen::Vector3d, 4>;
using Tri = std::array<Eigen::Vector3d, 3>;

template <class F>
double integrate_cell(const Tet& t, F&& f) {
  const Eigen::Vector3d e1 = t[1] - t[0];
  const Eigen::Vector3d e2 = t[2] - t[0];
  const Eigen::Vector3d e3 = t[3] - t[0];
  const double jac = std::abs(e1.dot(e2.cross(e3)));
  double sum = 0.0;
  for (const auto& q : tet_rule()) sum += q.w * f(t[0] + q.x * e1 + q.y * e2 + q.z * e3);
  return jac * sum;
}

/// Integral over a triangle embedded in R^3 (area measure).
template <class F>
double integrate_cell(const Tri& t, F&& f) {
  const Eigen::Vector3d e1 = t[1] - t[0];
  const Eigen::Vector3d e2 = t[2] - t[0];
  const double jac = e1.cross(e2).norm();
  double sum = 0.0;
  for (const auto& q : tri_rule()) sum += q.w * f(t[0] + q.x * e1 + q.y * e2);
  return jac * sum;
}

/// Red refinement into eight children of equal volume.
std::array<Tet, 8> subdivide(const Tet& t);
/// Midpoint refinement into four congruent children.
std::array<Tri, 4> subdivide(const Tri& t);

/// Non-adaptive integral after `levels` rounds of uniform refinement.
template <class Cell, class F>
double integrate_uniform(const Cell& c, int levels, F&& f) {
  if (levels <= 0) return integrate_cell(c, f);
  double sum = 0.0;
  for (const Cell& k : subdivide(c)) sum += integrate_uniform(k, levels - 1, f);
  return sum;
}

struct AdaptiveResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int cells = 0;
};

/// Each leaf carries its rule value and the sum of the rule over its
/// children; the latter is the reported value and their difference is the
/// error estimate. The leaf with the largest estimate is refined until the
/// summed estimate drops below tol * |value| or max_cells leaves exist. The
/// final sum runs over leaves in creation order, so the result is
/// deterministic.
template <class Cell, class F>
AdaptiveResult integrate_adaptive(const std::vector<Cell>& initial, F&& f, double tol,
                                  int max_cells) {
  constexpr int kids = static_cast<int>(std::tuple_size_v<decltype(subdivide(Cell{}))>);
  struct Leaf {
    Cell cell;
    std::array<double, kids> child_values;
    double fine;
    double err;
    long id;
  };
  std::vector<Leaf> leaves;
  auto make_leaf = [&](const Cell& c, double coarse) {
    Leaf l{c, {}, 0.0, 0.0, static_cast<long>(leaves.size())};
    const auto children = subdivide(c);
    for (int k = 0; k < kids; ++k) {
      l.child_values[k] = integrate_cell(children[k], f);
      l.fine += l.child_values[k];
    }
    l.err = std::abs(l.fine - coarse);
    leaves.push_back(l);
  };

  for (const Cell& c : initial) make_leaf(c, integrate_cell(c, f));

  auto less_urgent = [&](std::size_t a, std::size_t b) {
    if (leaves[a].err != leaves[b].err) return leaves[a].err < leaves[b].err;
    return leaves[a].id > leaves[b].id;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(less_urgent)> queue(
      less_urgent);
  std::vector<char> alive(leaves.size(), 1);
  double total = 0.0, total_err = 0.0;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    queue.push(i);
    total += leaves[i].fine;
    total_err += leaves[i].err;
  }
  long live = static_cast<long>(leaves.size());

  while (!queue.empty() && total_err > tol * std::abs(total) && live + kids - 1 <= max_cells) {
    const std::size_t idx = queue.top();
    queue.pop();
    const Leaf parent = leaves[idx];
    alive[idx] = 0;
    total -= parent.fine;
    total_err -= parent.err;
    const auto children = subdivide(parent.cell);
    for (int k = 0; k < kids; ++k) {
      make_leaf(children[k], parent.child_values[k]);
      alive.push_back(1);
      total += leaves.back().fine;
      total_err += leaves.back().err;
      queue.push(leaves.size() - 1);
    }
    live += kids - 1;
  }

  AdaptiveResult out;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (!alive[i]) continue;
    out.value += leaves[i].fine;
    out.error_estimate += leaves[i].err;
    ++out.cells;
  }
  return out;
}

}  // namespace isv::detail
