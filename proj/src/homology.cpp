#include <utility>

#include "isv/idtri.hpp"

namespace isv {

int rational_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    const Rational inv = Rational(1) / m[rank][c];
    for (std::size_t j = c; j < cols; ++j) m[rank][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][c].is_zero()) continue;
      const Rational factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= factor * m[rank][j];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

HomologyRanks marked_homology_ranks(const IdealTriangulation& tri) {
  const CellQuotient q = quotient_cells(tri);
  const auto T = static_cast<std::size_t>(q.num_tets);
  const auto F = static_cast<std::size_t>(q.num_faces);

  std::vector<int> edge_column(static_cast<std::size_t>(q.num_edges), -1);
  int live_edges = 0;
  for (std::size_t e = 0; e < edge_column.size(); ++e)
    if (!q.edge_reversed[e]) edge_column[e] = live_edges++;

  // d3: tetrahedra -> face classes.
  std::vector<std::vector<Rational>> d3(F, std::vector<Rational>(T));
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t f = 0; f < 4; ++f) {
      const std::size_t inst = 4 * t + f;
      const int sign = (f % 2 == 0 ? 1 : -1) * q.face_sign[inst];
      d3[static_cast<std::size_t>(q.face_class[inst])][t] += Rational(sign);
    }

  // d2: face classes -> surviving edge classes, using one instance per class.
  std::vector<std::vector<Rational>> d2(static_cast<std::size_t>(live_edges), std::vector<Rational>(F));
  std::vector<bool> done(F, false);
  for (std::size_t inst = 0; inst < 4 * T; ++inst) {
    const auto cls = static_cast<std::size_t>(q.face_class[inst]);
    if (done[cls]) continue;
    done[cls] = true;
    const std::size_t t = inst / 4;
    const int f = static_cast<int>(inst % 4);
    std::array<int, 3> v{};
    std::size_t k = 0;
    for (int a = 0; a < 4; ++a)
      if (a != f) v[k++] = a;
    const std::array<std::pair<std::array<int, 2>, int>, 3> sides{
        {{{v[1], v[2]}, 1}, {{v[0], v[2]}, -1}, {{v[0], v[1]}, 1}}};
    for (const auto& [ends, coeff] : sides) {
      const std::size_t e = 6 * t + static_cast<std::size_t>(edge_index(ends[0], ends[1]));
      const int col = edge_column[static_cast<std::size_t>(q.edge_class[e])];
      if (col < 0) continue;
      d2[static_cast<std::size_t>(col)][cls] += Rational(coeff * q.face_sign[inst] * q.edge_sign[e]);
    }
  }

  const int r3 = rational_rank(std::move(d3));
  const int r2 = rational_rank(std::move(d2));
  HomologyRanks h;
  h.rank[0] = 0;
  h.rank[1] = live_edges - r2;
  h.rank[2] = static_cast<int>(F) - r2 - r3;
  h.rank[3] = static_cast<int>(T) - r3;
  return h;
}

}  // namespace isv
