#pragma once

#include <functional>

namespace isv {

inline constexpr double kPi = 3.14159265358979323846;

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int subdivisions = 0;
};

inline constexpr double kDefaultQuadTol = 1e-9;
inline constexpr double kDefaultRootTol = 1e-12;

/// Lobachevsky function L(t) = -int_0^t log|2 sin u| du = 1/2 sum sin(2kt)/k^2.
/// Odd and pi-periodic; evaluated through the Bernoulli expansion of the
/// Clausen function after reduction to |t| <= pi/2.
[[nodiscard]] double lobachevsky(double theta);

/// Volume of the regular ideal octahedron, 8 L(pi/4).
[[nodiscard]] double v8();
/// Volume of the regular ideal tetrahedron, 3 L(pi/3) = 2 L(pi/6).
[[nodiscard]] double v3();

/// arccosh(cos t / (2 cos t - 1)) for 0 <= t < pi/3: the internal edge length
/// of the regular truncated tetrahedron with dihedral angle t.
[[nodiscard]] double edge_integrand(double t);

/// Adaptive Simpson quadrature on [a, b]. Throws MaxSubdivisions if more than
/// one million panels would be needed.
[[nodiscard]] QuadratureResult integrate(const std::function<double(double)>& f, double a,
                                         double b, double tol = kDefaultQuadTol);

/// Bisection to |hi - lo| <= tol. Throws NoSignChange unless f(lo) f(hi) < 0
/// (an exact zero at an endpoint is returned directly).
[[nodiscard]] double find_root(const std::function<double(double)>& f, double lo, double hi,
                               double tol = kDefaultRootTol);

}  // namespace isv
