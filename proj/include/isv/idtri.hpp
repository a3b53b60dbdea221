#pragma once

// Ideal triangulations: tetrahedra glued along faces by arbitrary label
// bijections. Every vertex of the resulting Delta-complex is ideal, i.e. a
// boundary component of the manifold collapsed to a point.
//
// Conventions: vertex labels 0..3; face f is opposite vertex f; the six local
// edges are indexed 01, 02, 03, 12, 13, 23. A gluing of (t, f) to (t', f')
// carries vertex label v of t to label perm[v] of t', with perm[f] = f'.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "isv/rational.hpp"

namespace isv {

using Perm4 = std::array<int, 4>;

/// +1 for even permutations of {0,1,2,3}, -1 for odd ones.
[[nodiscard]] int perm_sign(const Perm4& p) noexcept;
[[nodiscard]] Perm4 perm_inverse(const Perm4& p) noexcept;
[[nodiscard]] bool is_permutation(const Perm4& p) noexcept;
/// The 24 permutations in lexicographic order.
[[nodiscard]] const std::array<Perm4, 24>& all_perms();

struct Gluing {
  int tet = 0;
  int face = 0;
  int other_tet = 0;
  int other_face = 0;
  Perm4 perm{0, 1, 2, 3};

  friend bool operator==(const Gluing&, const Gluing&) = default;
};

class IdealTriangulation {
 public:
  struct Partner {
    int tet = -1;
    int face = -1;
    Perm4 perm{0, 1, 2, 3};
  };

  /// Each geometric gluing listed once; inverses are synthesized. Throws
  /// UnpairedFace, InconsistentInvolution, BadPermutation, DuplicateGluing or
  /// InvalidArgument (indices out of range).
  IdealTriangulation(int num_tets, const std::vector<Gluing>& gluings);

  [[nodiscard]] int size() const noexcept { return num_tets_; }
  [[nodiscard]] const Partner& partner(int tet, int face) const {
    return slots_[static_cast<std::size_t>(4 * tet + face)];
  }
  /// One entry per face pair, from the slot with the smaller (tet, face).
  [[nodiscard]] std::vector<Gluing> gluings() const;

 private:
  int num_tets_;
  std::vector<Partner> slots_;
};

/// Reads the line-oriented `idtri v1` format; `%` starts a comment.
[[nodiscard]] IdealTriangulation parse_triangulation(std::string_view text);
[[nodiscard]] IdealTriangulation load_triangulation(const std::string& path);
[[nodiscard]] std::string serialize(const IdealTriangulation& tri);

// ---------------------------------------------------------------------------

inline constexpr std::array<std::array<int, 2>, 6> kTetEdges{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
[[nodiscard]] int edge_index(int a, int b);

struct CellQuotient {
  int num_vertices = 0;
  int num_edges = 0;
  int num_faces = 0;
  int num_tets = 0;
  int num_components = 0;
  std::vector<int> vertex_class;  // [4 t + v]
  std::vector<int> edge_class;    // [6 t + e]
  std::vector<int> edge_sign;     // orientation of the instance against its class
  std::vector<bool> edge_reversed;  // per class: identified with itself backwards
  std::vector<int> face_class;    // [4 t + f]
  std::vector<int> face_sign;
  std::vector<int> component;     // per tetrahedron

  /// V - E + F - T of the quotient cell structure.
  [[nodiscard]] int euler_characteristic() const {
    return num_vertices - num_edges + num_faces - num_tets;
  }
};

[[nodiscard]] CellQuotient quotient_cells(const IdealTriangulation& tri);

struct LinkSurface {
  int vertex_class = 0;
  int euler_char = 0;
  bool orientable = true;
  /// Genus when orientable, number of cross-caps otherwise.
  int genus_or_crosscaps = 0;
  int num_triangles = 0;
};

/// One link per vertex class, ordered by class index. Throws NonManifoldLink
/// if a link edge does not have exactly two incident triangles.
[[nodiscard]] std::vector<LinkSurface> vertex_links(const IdealTriangulation& tri);

/// chi(M) = sum chi(link) / 2. Throws NonIntegral when the sum is odd.
[[nodiscard]] Rational euler_characteristic_M(const IdealTriangulation& tri);

struct Orientation {
  bool orientable = false;
  /// +1 / -1 per tetrahedron; meaningful only when orientable.
  std::vector<int> signs;
};

/// A gluing is orientation-compatible when, after applying the signs, its
/// label bijection is odd.
[[nodiscard]] Orientation orientability(const IdealTriangulation& tri);

struct MgDetection {
  bool is_Mg = false;
  int g = 0;
};

/// Orientable, connected, one vertex, one edge, g >= 2 tetrahedra and
/// chi(M) = 1 - g.
[[nodiscard]] MgDetection detect_Mg(const IdealTriangulation& tri);

// ---------------------------------------------------------------------------
// Marked chains: rational combinations of (tetrahedron, vertex ordering).
// The term (t, tau) is the affine simplex sending e_i to vertex tau[i] of t.

struct MarkedTerm {
  int tet = 0;
  Perm4 ordering{0, 1, 2, 3};
  Rational coeff;
};

struct MarkedCycle {
  std::vector<MarkedTerm> terms;

  /// Sum of |coefficients| after merging repeated (tet, ordering) pairs.
  [[nodiscard]] Rational l1_norm() const;
  [[nodiscard]] MarkedCycle scaled(const Rational& c) const;
};

/// (1/24) sum_j sum_tau sign(tau) o_j (j, tau), with o_j the orientation
/// signs. Throws NotOrientable.
[[nodiscard]] MarkedCycle alternated_fundamental_cycle(const IdealTriangulation& tri);

/// True iff the boundary cancels exactly once triangle instances are
/// identified across the gluings. Malformed terms make it false.
[[nodiscard]] bool verify_marked_cycle(const IdealTriangulation& tri, const MarkedCycle& z);

/// Per tetrahedron: sum over its terms of sign(ordering) * coeff * o_t
/// (o_t = +1 throughout when the triangulation is not orientable).
[[nodiscard]] std::vector<Rational> local_degrees(const IdealTriangulation& tri,
                                                  const MarkedCycle& z);

struct HomologyRanks {
  std::array<int, 4> rank{};  // H_0 .. H_3 relative to the vertex set
};

/// Ranks over Q of the cellular homology of the quotient complex relative to
/// its vertices. Edges glued to themselves backwards are killed.
[[nodiscard]] HomologyRanks marked_homology_ranks(const IdealTriangulation& tri);

/// Rank over Q of a dense rational matrix (row-major, rows x cols).
[[nodiscard]] int rational_rank(std::vector<std::vector<Rational>> m);

}  // namespace isv
