#pragma once

// Minkowski space R^{1,3}, the hyperboloid model and the Klein (projective)
// chart x0 = 1. Points of the Klein chart with |p| < 1 are finite points of
// H^3; points with |p| > 1 are hyperideal and are represented by their
// normalized spacelike lifts.

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace isv {

using Vec3 = Eigen::Vector3d;

/// Width of the band around the unit sphere where points are rejected as ideal.
inline constexpr double kIdealBand = 1e-9;

struct MinkowskiVector {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

/// -u0*v0 + u1*v1 + u2*v2 + u3*v3
[[nodiscard]] double mink_dot(const MinkowskiVector& u, const MinkowskiVector& v) noexcept;

enum class PointKind { Finite, Hyperideal };

/// A point of the Klein chart, classified on construction. Construction
/// throws IdealPoint when | |p| - 1 | <= kIdealBand.
class KleinPoint {
 public:
  /// The origin.
  KleinPoint() : p_(Vec3::Zero()), kind_(PointKind::Finite) {}
  explicit KleinPoint(const Vec3& p);
  KleinPoint(double x, double y, double z) : KleinPoint(Vec3(x, y, z)) {}

  [[nodiscard]] const Vec3& point() const noexcept { return p_; }
  [[nodiscard]] PointKind kind() const noexcept { return kind_; }
  [[nodiscard]] bool hyperideal() const noexcept { return kind_ == PointKind::Hyperideal; }

 private:
  Vec3 p_;
  PointKind kind_;
};

/// Closed half-space {x : normal . x <= offset}.
struct HalfSpace3 {
  Vec3 normal;
  double offset = 0.0;

  [[nodiscard]] double signed_excess(const Vec3& x) const { return normal.dot(x) - offset; }
  [[nodiscard]] bool contains(const Vec3& x, double tol = 0.0) const {
    return signed_excess(x) <= tol;
  }
};

/// Finite points land on the upper sheet of <v,v> = -1, hyperideal points on
/// the de Sitter space <v,v> = +1; in both cases x0 > 0.
[[nodiscard]] MinkowskiVector lift(const KleinPoint& p);

/// Klein-chart trace {x : x . p <= 1} of the half-space H+(p) bounded by the
/// polar plane of a hyperideal point. Always contains the origin.
[[nodiscard]] HalfSpace3 dual_halfspace(const KleinPoint& p);

/// Hyperbolic length of the (internal part of the) edge joining a and b:
///   finite-finite          cosh d = -<a,b>
///   finite-hyperideal      sinh d = |<a,b>|   (distance to the polar plane)
///   hyperideal-hyperideal  cosh d = |<a,b>|   (common perpendicular)
/// Throws DegenerateEdge when a == b and IntersectingTruncationPlanes when two
/// hyperideal points do not span an edge through the ball (<a,b> >= -1).
[[nodiscard]] double edge_length(const KleinPoint& a, const KleinPoint& b);

}  // namespace isv
