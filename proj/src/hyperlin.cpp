#include "isv/hyperlin.hpp"

#include <cmath>
#include <sstream>

#include "isv/error.hpp"

namespace isv {

double mink_dot(const MinkowskiVector& u, const MinkowskiVector& v) noexcept {
  return -u.x0 * v.x0 + u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3;
}

KleinPoint::KleinPoint(const Vec3& p) : p_(p), kind_(PointKind::Finite) {
  if (!p.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "Klein point has non-finite coordinates");
  }
  const double r = p.norm();
  if (std::abs(r - 1.0) <= kIdealBand) {
    std::ostringstream os;
    os << "point at Klein radius " << r << " lies on the sphere at infinity";
    throw Error(ErrorCode::IdealPoint, os.str());
  }
  kind_ = r < 1.0 ? PointKind::Finite : PointKind::Hyperideal;
}

MinkowskiVector lift(const KleinPoint& p) {
  const Vec3& x = p.point();
  const double s = x.squaredNorm();
  const double scale = p.hyperideal() ? 1.0 / std::sqrt(s - 1.0) : 1.0 / std::sqrt(1.0 - s);
  return {scale, scale * x.x(), scale * x.y(), scale * x.z()};
}

HalfSpace3 dual_halfspace(const KleinPoint& p) {
  if (!p.hyperideal()) {
    throw Error(ErrorCode::NotHyperideal, "dual half-space requested for a finite point");
  }
  return {p.point(), 1.0};
}

double edge_length(const KleinPoint& a, const KleinPoint& b) {
  if (a.point() == b.point()) {
    throw Error(ErrorCode::DegenerateEdge, "edge endpoints coincide");
  }
  const double d = mink_dot(lift(a), lift(b));
  if (a.hyperideal() && b.hyperideal()) {
    if (d >= -1.0) {
      std::ostringstream os;
      os << "truncation planes meet or the edge misses the ball (<a,b> = " << d << ")";
      throw Error(ErrorCode::IntersectingTruncationPlanes, os.str());
    }
    return std::acosh(-d);
  }
  if (a.hyperideal() != b.hyperideal()) {
    return std::asinh(std::abs(d));
  }
  return std::acosh(std::max(1.0, -d));
}

}  // namespace isv
