#pragma once

// Partially truncated tetrahedra in the Klein model: a projective simplex
// conv(v0..v3) cut by the polar half-spaces of its hyperideal vertices.

#include <array>
#include <string>
#include <vector>

#include "isv/hyperlin.hpp"

namespace isv {

struct TruncTetConfig {
  std::array<KleinPoint, 4> v;

  /// Indices of the hyperideal vertices, ascending.
  [[nodiscard]] std::vector<int> hyperideal_indices() const;
  /// det[v1 - v0, v2 - v0, v3 - v0], six times the signed Euclidean volume.
  [[nodiscard]] double affine_determinant() const;
};

/// Threshold on |affine_determinant| below which a configuration is flat.
inline constexpr double kCoplanarTol = 1e-12;

struct Validation {
  enum class Status { Valid, Degenerate, Invalid };
  Status status = Status::Valid;
  /// 1: some segment [vi, vj] misses the open ball.
  /// 2: a finite vertex lies outside the polar half-space of a hyperideal one.
  int condition = 0;
  std::string reason;

  [[nodiscard]] bool valid() const noexcept { return status == Status::Valid; }
};

/// Never throws.
[[nodiscard]] Validation validate(const TruncTetConfig& cfg);

struct ConvexPolytope3 {
  enum class FacetKind { Internal, Truncation };

  struct Facet {
    HalfSpace3 plane;          // unit outward normal
    std::vector<int> cycle;    // counter-clockwise seen from outside
    FacetKind kind = FacetKind::Internal;
    int source = 0;            // opposite vertex (Internal) or truncated vertex
  };

  std::vector<Vec3> vertices;
  std::vector<Facet> facets;

  [[nodiscard]] int edge_count() const;
  [[nodiscard]] int euler_characteristic() const {
    return static_cast<int>(vertices.size()) - edge_count() + static_cast<int>(facets.size());
  }
  [[nodiscard]] double max_radius() const;
};

/// Requires validate(cfg) == Valid (InvalidConfig otherwise). Vertices are
/// enumerated from plane triples; NumericallyDegenerate when two of them
/// coincide within 1e-9.
[[nodiscard]] ConvexPolytope3 truncation_polytope(const TruncTetConfig& cfg);

struct VolumeResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int cells = 0;
};

inline constexpr double kDefaultVolumeTol = 1e-7;
inline constexpr int kMaxCubatureCells = 200'000;

/// Hyperbolic volume int_P (1 - |x|^2)^-2 dx of a Klein-chart polytope by
/// adaptive degree-5 cubature on a fan triangulation. `tol` is relative.
/// Throws TouchesSphere unless every vertex has |x| < 1 - 1e-9.
[[nodiscard]] VolumeResult integrate_volume(const ConvexPolytope3& poly,
                                            double tol = kDefaultVolumeTol);
[[nodiscard]] double volume(const ConvexPolytope3& poly, double tol = kDefaultVolumeTol);

/// Signed volume of the truncated simplex spanned by y0..y3; zero for
/// affinely dependent tuples. Alternating in its arguments, with |value|
/// independent of argument order bit for bit.
[[nodiscard]] double algvol(const KleinPoint& y0, const KleinPoint& y1, const KleinPoint& y2,
                            const KleinPoint& y3, double tol = kDefaultVolumeTol);

// ---------------------------------------------------------------------------
// Regular truncated tetrahedra: all six internal edges of length ell, all
// dihedral angles theta, with cosh(ell) = cos(theta) / (2 cos(theta) - 1).

struct RegularTruncTet {
  double ell = 0.0;
  double theta = 0.0;
  double volume = 0.0;
};

[[nodiscard]] double regular_theta_of_ell(double ell);
[[nodiscard]] double regular_ell_of_theta(double theta);
/// Edge length of the regular truncated tetrahedron with dihedral angle pi/(3g).
[[nodiscard]] double ell_g(int g);
/// v8 - 3 int_0^theta(ell) edge_integrand(t) dt.
[[nodiscard]] double regular_volume(double ell);
[[nodiscard]] RegularTruncTet regular_tet_from_ell(double ell);
/// Klein radius r of the hyperideal vertices: r^2 = (cosh l + 1) / (cosh l - 1/3).
[[nodiscard]] double regular_radius(double theta);
/// Four hyperideal points at radius regular_radius(theta) in the directions
/// of a regular tetrahedron centred at the origin.
[[nodiscard]] TruncTetConfig build_regular_config(double theta);

}  // namespace isv
