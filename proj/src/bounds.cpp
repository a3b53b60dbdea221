#include "isv/bounds.hpp"

#include <cmath>
#include <sstream>

#include "isv/error.hpp"
#include "isv/specfun.hpp"
#include "isv/trunc.hpp"

namespace isv {

namespace {

constexpr double kFloorGuard = 1e-9;
// Relative excess of the lower over the upper bound attributed to rounded inputs.
constexpr double kInputSlack = 1e-3;

double require_volume(const ManifoldDescriptor& d) {
  if (!d.volume) throw Error(ErrorCode::MissingField, std::string(to_string(d.kind)) + " needs a volume");
  if (!(*d.volume > 0.0) || !std::isfinite(*d.volume))
    throw Error(ErrorCode::InvalidArgument, "volume must be positive");
  return *d.volume;
}

void attach_upper(const ManifoldDescriptor& d, BoundReport& r) {
  if (!d.complexity_upper) return;
  if (*d.complexity_upper < 1) throw Error(ErrorCode::InvalidArgument, "complexity must be positive");
  r.upper = static_cast<double>(*d.complexity_upper);
  r.provenance.emplace_back(tags::kComplexity);
}

int guarded_floor(double x) { return static_cast<int>(std::floor(x + kFloorGuard)); }

}  // namespace

std::string_view to_string(ManifoldKind kind) noexcept {
  switch (kind) {
    case ManifoldKind::CuspedHyperbolic: return "CuspedHyperbolic";
    case ManifoldKind::GeodesicBoundary: return "GeodesicBoundary";
    case ManifoldKind::Mg: return "Mg";
    case ManifoldKind::Generic: return "Generic";
  }
  return "Generic";
}

std::optional<ManifoldKind> parse_kind(std::string_view text) {
  if (text == "cusped" || text == "CuspedHyperbolic") return ManifoldKind::CuspedHyperbolic;
  if (text == "geodesic" || text == "GeodesicBoundary") return ManifoldKind::GeodesicBoundary;
  if (text == "mg" || text == "Mg") return ManifoldKind::Mg;
  if (text == "generic" || text == "Generic") return ManifoldKind::Generic;
  return std::nullopt;
}

BoundReport isv_bounds(const ManifoldDescriptor& d) {
  BoundReport r;
  switch (d.kind) {
    case ManifoldKind::Mg: {
      if (!d.g) throw Error(ErrorCode::MissingField, "Mg needs g");
      if (*d.g < 2) throw Error(ErrorCode::BadGenus, "M_g requires g >= 2");
      const double g = *d.g;
      r.lower = g;
      r.upper = g;
      r.exact = g;
      r.provenance.emplace_back(tags::kMg);
      break;
    }
    case ManifoldKind::CuspedHyperbolic: {
      const double value = require_volume(d) / v3();
      r.lower = value;
      r.upper = value;
      r.exact = value;
      r.provenance.emplace_back(tags::kCusped);
      if (d.complexity_upper && *d.complexity_upper < 1)
        throw Error(ErrorCode::InvalidArgument, "complexity must be positive");
      break;
    }
    case ManifoldKind::GeodesicBoundary: {
      const double vol = require_volume(d);
      if (d.return_length && !(*d.return_length > 0.0))
        throw Error(ErrorCode::InvalidArgument, "return length must be positive");
      if (d.return_length && *d.return_length <= ell_g(2) + kFloorGuard) {
        r.lower = vol / regular_volume(*d.return_length);
        r.provenance.emplace_back(tags::kVolumeRegular);
      } else {
        r.lower = vol / v8();
        r.provenance.emplace_back(tags::kVolumeOctahedron);
        if (d.return_length)
          r.notes.emplace_back("return length exceeds ell_2; the certified constant falls back to v8");
      }
      attach_upper(d, r);
      break;
    }
    case ManifoldKind::Generic: {
      if (!d.complexity_upper) throw Error(ErrorCode::MissingField, "Generic needs a complexity bound");
      attach_upper(d, r);
      r.notes.emplace_back(tags::kNonEffective);
      break;
    }
  }
  if (r.upper && r.lower > *r.upper) {
    if (r.lower > *r.upper * (1.0 + kInputSlack))
      throw Error(ErrorCode::InvalidArgument, "lower bound exceeds the given complexity");
    r.lower = *r.upper;
    r.notes.emplace_back("lower bound clamped to the complexity bound");
  }
  if (d.kind == ManifoldKind::GeodesicBoundary || d.kind == ManifoldKind::Mg) {
    const std::optional<double> top = r.exact ? r.exact : r.upper;
    if (top && *top <= 2.0 + kFloorGuard) {
      r.boundary_genus_two = true;
      r.notes.emplace_back(tags::kGenusTwo);
    }
  }
  return r;
}

DegreeBounds degree_bounds(int g, int g_prime) {
  if (g_prime < 2 || g < g_prime)
    throw Error(ErrorCode::BadGenus, "need g >= g' >= 2, got g = " + std::to_string(g) +
                                         ", g' = " + std::to_string(g_prime));
  DegreeBounds b;
  b.ideal = g / g_prime;
  b.boundary = (g - 1) / (g_prime - 1);
  b.ideal_ratio = static_cast<double>(g) / g_prime;
  b.boundary_ratio = static_cast<double>(g - 1) / (g_prime - 1);
  if (g == g_prime) {
    b.double_ratio = 1.0;
  } else {
    b.double_ratio = (g * regular_volume(ell_g(g))) / (g_prime * regular_volume(ell_g(g_prime)));
  }
  b.double_ = guarded_floor(b.double_ratio);
  return b;
}

std::string amenable_equality(const ManifoldDescriptor& d) {
  std::ostringstream out;
  const bool amenable = d.amenable_boundary || d.kind == ManifoldKind::CuspedHyperbolic;
  if (!amenable) {
    out << "isv <= ||M||";
    return out.str();
  }
  out << "isv = ||M||";
  if (d.kind == ManifoldKind::CuspedHyperbolic) {
    out << " = vol/v3";
    if (d.volume && *d.volume > 0.0) {
      out.precision(12);
      out << " = " << *d.volume / v3();
    }
  }
  return out.str();
}

}  // namespace isv
