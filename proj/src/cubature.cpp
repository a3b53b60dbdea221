#include "cubature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace isv::detail {

void gauss_jacobi01(int n, double alpha, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  // Golub-Welsch on the Jacobi matrix for (1 - t)^alpha on [-1, 1], then
  // u = (1 + t) / 2.
  const double beta = 0.0;
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + alpha + beta;
    jm(k, k) = (k == 0) ? (beta - alpha) / (alpha + beta + 2.0)
                        : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    if (k + 1 < n) {
      const double j = k + 1.0;
      const double sj = 2.0 * j + alpha + beta;
      const double b = std::sqrt(4.0 * j * (j + alpha) * (j + beta) * (j + alpha + beta) /
                                 (sj * sj * (sj + 1.0) * (sj - 1.0)));
      jm(k, k + 1) = b;
      jm(k + 1, k) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jm);
  const double mu0 = std::pow(2.0, alpha + beta + 1.0) * std::tgamma(alpha + 1.0) *
                     std::tgamma(beta + 1.0) / std::tgamma(alpha + beta + 2.0);
  nodes.resize(n);
  weights.resize(n);
  for (int k = 0; k < n; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    nodes[k] = 0.5 * (1.0 + es.eigenvalues()(k));
    weights[k] = mu0 * v0 * v0 / std::pow(2.0, alpha + 1.0);
  }
}

const std::vector<TetRulePoint>& tet_rule() {
  static const std::vector<TetRulePoint> rule = [] {
    // Duffy collapse x = u, y = (1-u) v, z = (1-u)(1-v) w with Jacobian
    // (1-u)^2 (1-v) absorbed into Gauss-Jacobi weights.
    std::vector<double> nu, wu, nv, wv, nw, ww;
    gauss_jacobi01(3, 2.0, nu, wu);
    gauss_jacobi01(3, 1.0, nv, wv);
    gauss_jacobi01(3, 0.0, nw, ww);
    std::vector<TetRulePoint> pts;
    pts.reserve(27);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          const double u = nu[i];
          const double v = nv[j];
          const double w = nw[k];
          pts.push_back({u, (1.0 - u) * v, (1.0 - u) * (1.0 - v) * w, wu[i] * wv[j] * ww[k]});
        }
      }
    }
    return pts;
  }();
  return rule;
}

const std::vector<TriRulePoint>& tri_rule() {
  static const std::vector<TriRulePoint> rule = [] {
    // x = u, y = (1-u) v with Jacobian (1-u).
    std::vector<double> nu, wu, nv, wv;
    gauss_jacobi01(3, 1.0, nu, wu);
    gauss_jacobi01(3, 0.0, nv, wv);
    std::vector<TriRulePoint> pts;
    pts.reserve(9);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        pts.push_back({nu[i], (1.0 - nu[i]) * nv[j], wu[i] * wv[j]});
      }
    }
    return pts;
  }();
  return rule;
}

std::array<Tri, 4> subdivide(const Tri& t) {
  const auto& [a, b, c] = t;
  const Eigen::Vector3d ab = 0.5 * (a + b), ac = 0.5 * (a + c), bc = 0.5 * (b + c);
  return {{{a, ab, ac}, {ab, b, bc}, {ac, bc, c}, {bc, ac, ab}}};
}

std::array<Tet, 8> subdivide(const Tet& t) {
  const auto& [a, b, c, d] = t;
  const Eigen::Vector3d ab = 0.5 * (a + b), ac = 0.5 * (a + c), ad = 0.5 * (a + d);
  const Eigen::Vector3d bc = 0.5 * (b + c), bd = 0.5 * (b + d), cd = 0.5 * (c + d);
  // Four corners, then the inner octahedron split along the ac-bd diagonal.
  return {{{a, ab, ac, ad},
           {ab, b, bc, bd},
           {ac, bc, c, cd},
           {ad, bd, cd, d},
           {ab, ac, ad, bd},
           {ab, ac, bc, bd},
           {ac, ad, bd, cd},
           {ac, bc, bd, cd}}};
}

}  // namespace isv::detail
