#pragma once

// Bounds and exact values for the ideal simplicial volume ||M||_I, and
// comparisons of three upper bounds on mapping degrees between manifolds of
// the family M_g.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isv {

enum class ManifoldKind { CuspedHyperbolic, GeodesicBoundary, Mg, Generic };

[[nodiscard]] std::string_view to_string(ManifoldKind kind) noexcept;
/// Accepts "cusped", "geodesic", "mg", "generic" and the enumerator names.
[[nodiscard]] std::optional<ManifoldKind> parse_kind(std::string_view text);

struct ManifoldDescriptor {
  ManifoldKind kind = ManifoldKind::Generic;
  std::optional<double> volume;
  std::optional<int> g;
  /// Length of the shortest geodesic arc orthogonal to the boundary at both ends.
  std::optional<double> return_length;
  /// Tetrahedra in some known ideal triangulation.
  std::optional<int> complexity_upper;
  bool amenable_boundary = false;
};

namespace tags {
inline constexpr std::string_view kComplexity = "isv<=complexity";
inline constexpr std::string_view kVolumeRegular = "isv>=vol/vol(regular truncated tetrahedron)";
inline constexpr std::string_view kVolumeOctahedron = "isv>=vol/v8";
inline constexpr std::string_view kCusped = "isv=sv=vol/v3";
inline constexpr std::string_view kMg = "isv=g on M_g";
inline constexpr std::string_view kNonEffective = "sv<=K_n*isv (K_n exists, non-effective)";
inline constexpr std::string_view kGenusTwo = "boundary must be genus 2";
}  // namespace tags

struct BoundReport {
  double lower = 0.0;
  std::optional<double> upper;
  std::optional<double> exact;
  std::vector<std::string> provenance;
  std::vector<std::string> notes;
  /// Set for geodesic boundary when exact or upper value is at most 2.
  bool boundary_genus_two = false;
};

/// Throws MissingField when the kind's required inputs are absent, BadGenus
/// for kind Mg with g < 2, InvalidArgument for non-positive volume, return
/// length or complexity, or when the lower bound exceeds the given upper one
/// by more than a relative 1e-3 (smaller excesses are clamped).
[[nodiscard]] BoundReport isv_bounds(const ManifoldDescriptor& d);

struct DegreeBounds {
  int ideal = 0;
  int double_ = 0;
  int boundary = 0;
  double ideal_ratio = 0.0;
  double double_ratio = 0.0;
  double boundary_ratio = 0.0;
};

/// Upper bounds on deg(f) for f : M -> M' with M in M_g, M' in M_g'.
/// Requires g >= g' >= 2 (BadGenus).
[[nodiscard]] DegreeBounds degree_bounds(int g, int g_prime);

/// Statement relating ||M||_I and the simplicial volume ||M||.
[[nodiscard]] std::string amenable_equality(const ManifoldDescriptor& d);

}  // namespace isv
