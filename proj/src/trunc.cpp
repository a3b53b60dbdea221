#include "isv/trunc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include <Eigen/Dense>

#include "cubature.hpp"
#include "trunc_detail.hpp"
#include "isv/error.hpp"
#include "isv/specfun.hpp"

namespace isv {

namespace {

constexpr double kVertexTol = 1e-9;
constexpr double kSphereMargin = 1e-9;

// Minimum of |a + s (b - a)|^2 over s in [0, 1].
double segment_min_norm2(const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  const double dd = d.squaredNorm();
  double s = dd > 0.0 ? -a.dot(d) / dd : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (a + s * d).squaredNorm();
}

HalfSpace3 normalized(const Vec3& n, double offset) {
  const double len = n.norm();
  return {n / len, offset / len};
}

}  // namespace

std::vector<int> TruncTetConfig::hyperideal_indices() const {
  std::vector<int> out;
  for (int i = 0; i < 4; ++i) {
    if (v[i].hyperideal()) out.push_back(i);
  }
  return out;
}

double TruncTetConfig::affine_determinant() const {
  const Vec3 e1 = v[1].point() - v[0].point();
  const Vec3 e2 = v[2].point() - v[0].point();
  const Vec3 e3 = v[3].point() - v[0].point();
  return e1.dot(e2.cross(e3));
}

Validation validate(const TruncTetConfig& cfg) {
  Validation out;
  if (std::abs(cfg.affine_determinant()) < kCoplanarTol) {
    out.status = Validation::Status::Degenerate;
    out.reason = "vertices are affinely dependent";
    return out;
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (segment_min_norm2(cfg.v[i].point(), cfg.v[j].point()) >= 1.0) {
        out.status = Validation::Status::Invalid;
        out.condition = 1;
        out.reason = "segment [v" + std::to_string(i) + ", v" + std::to_string(j) +
                     "] misses the open unit ball";
        return out;
      }
    }
  }
  for (int i = 0; i < 4; ++i) {
    if (!cfg.v[i].hyperideal()) continue;
    for (int j = 0; j < 4; ++j) {
      if (cfg.v[j].hyperideal()) continue;
      if (!(cfg.v[j].point().dot(cfg.v[i].point()) < 1.0)) {
        out.status = Validation::Status::Invalid;
        out.condition = 2;
        out.reason = "finite vertex v" + std::to_string(j) +
                     " is not inside the polar half-space of v" + std::to_string(i);
        return out;
      }
    }
  }
  return out;
}

int ConvexPolytope3::edge_count() const {
  std::size_t half_edges = 0;
  for (const auto& f : facets) half_edges += f.cycle.size();
  return static_cast<int>(half_edges / 2);
}

double ConvexPolytope3::max_radius() const {
  double r = 0.0;
  for (const auto& x : vertices) r = std::max(r, x.norm());
  return r;
}

ConvexPolytope3 truncation_polytope(const TruncTetConfig& cfg) {
  const Validation val = validate(cfg);
  if (!val.valid()) {
    throw Error(ErrorCode::InvalidConfig, val.reason.empty() ? "degenerate configuration"
                                                             : val.reason);
  }

  struct Plane {
    HalfSpace3 h;
    ConvexPolytope3::FacetKind kind;
    int source;
  };
  std::vector<Plane> planes;
  for (int i = 0; i < 4; ++i) {
    const int a = (i + 1) % 4, b = (i + 2) % 4, c = (i + 3) % 4;
    const Vec3& pa = cfg.v[a].point();
    Vec3 n = (cfg.v[b].point() - pa).cross(cfg.v[c].point() - pa);
    if (n.dot(cfg.v[i].point() - pa) > 0.0) n = -n;
    planes.push_back({normalized(n, n.dot(pa)), ConvexPolytope3::FacetKind::Internal, i});
  }
  for (int i : cfg.hyperideal_indices()) {
    const HalfSpace3 h = dual_halfspace(cfg.v[i]);
    planes.push_back({normalized(h.normal, h.offset), ConvexPolytope3::FacetKind::Truncation, i});
  }

  ConvexPolytope3 poly;
  const int np = static_cast<int>(planes.size());
  for (int i = 0; i < np; ++i) {
    for (int j = i + 1; j < np; ++j) {
      for (int k = j + 1; k < np; ++k) {
        Eigen::Matrix3d m;
        m.row(0) = planes[i].h.normal.transpose();
        m.row(1) = planes[j].h.normal.transpose();
        m.row(2) = planes[k].h.normal.transpose();
        if (std::abs(m.determinant()) < 1e-12) continue;
        const Vec3 x = m.partialPivLu().solve(
            Vec3(planes[i].h.offset, planes[j].h.offset, planes[k].h.offset));
        const bool inside = std::all_of(planes.begin(), planes.end(), [&](const Plane& p) {
          return p.h.contains(x, kVertexTol);
        });
        if (!inside) continue;
        for (const Vec3& y : poly.vertices) {
          if ((x - y).norm() <= kVertexTol) {
            throw Error(ErrorCode::NumericallyDegenerate,
                        "more than three facet planes meet at a vertex");
          }
        }
        poly.vertices.push_back(x);
      }
    }
  }

  for (const Plane& p : planes) {
    ConvexPolytope3::Facet facet{p.h, {}, p.kind, p.source};
    Vec3 centre = Vec3::Zero();
    for (int v = 0; v < static_cast<int>(poly.vertices.size()); ++v) {
      if (std::abs(p.h.signed_excess(poly.vertices[v])) <= kVertexTol) {
        facet.cycle.push_back(v);
        centre += poly.vertices[v];
      }
    }
    if (facet.cycle.size() < 3) continue;
    centre /= static_cast<double>(facet.cycle.size());
    const Vec3 e1 = (poly.vertices[facet.cycle[0]] - centre).normalized();
    const Vec3 e2 = p.h.normal.cross(e1);
    std::vector<std::pair<double, int>> keyed;
    for (int v : facet.cycle) {
      const Vec3 d = poly.vertices[v] - centre;
      keyed.emplace_back(std::atan2(d.dot(e2), d.dot(e1)), v);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t q = 0; q < keyed.size(); ++q) facet.cycle[q] = keyed[q].second;
    // Start each cycle at its lowest vertex index so the facet fans do not
    // jump under small motions of the configuration.
    std::rotate(facet.cycle.begin(), std::min_element(facet.cycle.begin(), facet.cycle.end()),
                facet.cycle.end());
    poly.facets.push_back(std::move(facet));
  }
  return poly;
}

namespace {

void require_inside_ball(const ConvexPolytope3& poly) {
  if (!(poly.max_radius() < 1.0 - kSphereMargin)) {
    std::ostringstream os;
    os << "polytope reaches Klein radius " << poly.max_radius();
    throw Error(ErrorCode::TouchesSphere, os.str());
  }
}

// int_0^R r^2 (1 - r^2)^-2 dr / R^3 = sum_{k>=1} k/(2k+1) R^(2k-2).
double radial_kernel(double r2) {
  if (r2 < 1e-2) {
    double sum = 0.0, power = 1.0;
    for (int k = 1; k <= 12; ++k) {
      sum += k / (2.0 * k + 1.0) * power;
      power *= r2;
    }
    return sum;
  }
  const double r = std::sqrt(r2);
  return (r / (2.0 * (1.0 - r2)) - 0.5 * std::atanh(r)) / (r2 * r);
}

}  // namespace

VolumeResult integrate_volume(const ConvexPolytope3& poly, double tol) {
  if (poly.vertices.empty()) return {};
  require_inside_ball(poly);

  Vec3 centroid = Vec3::Zero();
  for (const Vec3& x : poly.vertices) centroid += x;
  centroid /= static_cast<double>(poly.vertices.size());

  std::vector<detail::Tet> fan;
  for (const auto& f : poly.facets) {
    const Vec3& w0 = poly.vertices[f.cycle[0]];
    for (std::size_t i = 1; i + 1 < f.cycle.size(); ++i) {
      fan.push_back({centroid, w0, poly.vertices[f.cycle[i]], poly.vertices[f.cycle[i + 1]]});
    }
  }
  const auto r = detail::integrate_adaptive(
      fan,
      [](const Vec3& x) {
        const double s = 1.0 - x.squaredNorm();
        return 1.0 / (s * s);
      },
      tol, kMaxCubatureCells);
  return {r.value, r.error_estimate, r.cells};
}

namespace detail {

VolumeResult flux_volume(const ConvexPolytope3& poly, double tol) {
  if (poly.vertices.empty()) return {};
  require_inside_ball(poly);
  // The field x * radial_kernel(|x|^2) has divergence (1 - |x|^2)^-2, so the
  // volume is the sum over facets of offset * int_F radial_kernel dA.
  VolumeResult out;
  for (const auto& f : poly.facets) {
    std::vector<Tri> fan;
    const Vec3& w0 = poly.vertices[f.cycle[0]];
    for (std::size_t i = 1; i + 1 < f.cycle.size(); ++i) {
      fan.push_back({w0, poly.vertices[f.cycle[i]], poly.vertices[f.cycle[i + 1]]});
    }
    const auto r = integrate_adaptive(
        fan, [](const Vec3& x) { return radial_kernel(x.squaredNorm()); }, tol, kMaxCubatureCells);
    out.value += f.plane.offset * r.value;
    out.error_estimate += std::abs(f.plane.offset) * r.error_estimate;
    out.cells += r.cells;
  }
  return out;
}

VolumeResult flux_volume_uniform(const ConvexPolytope3& poly, int levels) {
  if (poly.vertices.empty()) return {};
  require_inside_ball(poly);
  VolumeResult out;
  for (const auto& f : poly.facets) {
    const Vec3& w0 = poly.vertices[f.cycle[0]];
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < f.cycle.size(); ++i) {
      const Tri t{w0, poly.vertices[f.cycle[i]], poly.vertices[f.cycle[i + 1]]};
      sum += integrate_uniform(t, levels,
                               [](const Vec3& x) { return radial_kernel(x.squaredNorm()); });
      out.cells += 1 << (2 * levels);
    }
    out.value += f.plane.offset * sum;
  }
  return out;
}

}  // namespace detail

double volume(const ConvexPolytope3& poly, double tol) { return integrate_volume(poly, tol).value; }

double algvol(const KleinPoint& y0, const KleinPoint& y1, const KleinPoint& y2,
              const KleinPoint& y3, double tol) {
  std::array<KleinPoint, 4> ys{y0, y1, y2, y3};
  std::array<int, 4> order{0, 1, 2, 3};
  auto lex_less = [&](int a, int b) {
    const Vec3& p = ys[a].point();
    const Vec3& q = ys[b].point();
    return std::lexicographical_compare(p.data(), p.data() + 3, q.data(), q.data() + 3);
  };
  std::sort(order.begin(), order.end(), lex_less);
  int inversions = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (order[i] > order[j]) ++inversions;
    }
  }
  const TruncTetConfig sorted{{ys[order[0]], ys[order[1]], ys[order[2]], ys[order[3]]}};
  const double det = sorted.affine_determinant();
  if (std::abs(det) < kCoplanarTol) return 0.0;
  const double vol = volume(truncation_polytope(sorted), tol);
  const double sign = ((det > 0.0) == (inversions % 2 == 0)) ? 1.0 : -1.0;
  return sign * vol;
}

// ---------------------------------------------------------------------------

double regular_theta_of_ell(double ell) {
  if (!(ell > 0.0) || !std::isfinite(ell)) {
    throw Error(ErrorCode::OutOfDomain, "regular_theta_of_ell needs ell > 0");
  }
  // 1 - cos(theta) = (C - 1) / (2C - 1) with C = cosh(ell).
  double w;
  if (ell < 1.0) {
    const double sh = std::sinh(0.5 * ell);
    w = 2.0 * sh * sh / (2.0 * std::cosh(ell) - 1.0);
  } else {
    const double sech = 1.0 / std::cosh(ell);
    w = (1.0 - sech) / (2.0 - sech);
  }
  return 2.0 * std::asin(std::sqrt(0.5 * w));
}

double regular_ell_of_theta(double theta) {
  if (!(theta > 0.0) || !(theta < kPi / 3.0)) {
    throw Error(ErrorCode::OutOfDomain, "regular_ell_of_theta needs 0 < theta < pi/3");
  }
  return edge_integrand(theta);
}

double ell_g(int g) {
  if (g < 2) throw Error(ErrorCode::OutOfDomain, "ell_g needs g >= 2");
  return regular_ell_of_theta(kPi / (3.0 * g));
}

double regular_volume(double ell) {
  const double theta = regular_theta_of_ell(ell);
  // int_0^theta(ell) ell(t) dt = theta(ell) ell - int_0^ell theta(s) ds, since
  // ell(.) and theta(.) are mutually inverse with ell(0) = 0. The right-hand
  // side has a bounded integrand for every ell.
  const auto inner = integrate(
      [](double s) { return s > 0.0 ? regular_theta_of_ell(s) : 0.0; }, 0.0, ell, 1e-12);
  return v8() - 3.0 * (theta * ell - inner.value);
}

RegularTruncTet regular_tet_from_ell(double ell) {
  return {ell, regular_theta_of_ell(ell), regular_volume(ell)};
}

double regular_radius(double theta) {
  const double c = std::cos(theta);
  const double ch = c / (2.0 * c - 1.0);
  if (!(theta > 0.0) || !(theta < kPi / 3.0)) {
    throw Error(ErrorCode::OutOfDomain, "regular_radius needs 0 < theta < pi/3");
  }
  return std::sqrt((ch + 1.0) / (ch - 1.0 / 3.0));
}

TruncTetConfig build_regular_config(double theta) {
  const double r = regular_radius(theta) / std::sqrt(3.0);
  return {{KleinPoint(r, r, r), KleinPoint(r, -r, -r), KleinPoint(-r, r, -r),
           KleinPoint(-r, -r, r)}};
}

}  // namespace isv
