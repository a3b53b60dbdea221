#include "isv/idtri.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "isv/error.hpp"
#include "union_find.hpp"

namespace isv {

int perm_sign(const Perm4& p) noexcept {
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

Perm4 perm_inverse(const Perm4& p) noexcept {
  Perm4 q{};
  for (int i = 0; i < 4; ++i) q[static_cast<std::size_t>(p[i])] = i;
  return q;
}

bool is_permutation(const Perm4& p) noexcept {
  std::array<bool, 4> seen{};
  for (int x : p) {
    if (x < 0 || x > 3 || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

const std::array<Perm4, 24>& all_perms() {
  static const std::array<Perm4, 24> perms = [] {
    std::array<Perm4, 24> out{};
    Perm4 p{0, 1, 2, 3};
    std::size_t i = 0;
    do {
      out[i++] = p;
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return perms;
}

int edge_index(int a, int b) {
  if (a > b) std::swap(a, b);
  for (std::size_t e = 0; e < kTetEdges.size(); ++e)
    if (kTetEdges[e][0] == a && kTetEdges[e][1] == b) return static_cast<int>(e);
  throw Error(ErrorCode::InvalidArgument, "not a tetrahedron edge");
}

IdealTriangulation::IdealTriangulation(int num_tets, const std::vector<Gluing>& gluings)
    : num_tets_(num_tets) {
  if (num_tets < 1) throw Error(ErrorCode::InvalidArgument, "need at least one tetrahedron");
  slots_.resize(static_cast<std::size_t>(4 * num_tets));
  auto slot_at = [&](int t, int f) -> Partner& { return slots_[static_cast<std::size_t>(4 * t + f)]; };
  for (const Gluing& g : gluings) {
    std::ostringstream where;
    where << "glue " << g.tet << ' ' << g.face << " -> " << g.other_tet << ' ' << g.other_face;
    if (g.tet < 0 || g.tet >= num_tets || g.other_tet < 0 || g.other_tet >= num_tets || g.face < 0 ||
        g.face > 3 || g.other_face < 0 || g.other_face > 3)
      throw Error(ErrorCode::InvalidArgument, "index out of range in " + where.str());
    if (!is_permutation(g.perm))
      throw Error(ErrorCode::BadPermutation, "label map is not a bijection in " + where.str());
    if (g.perm[static_cast<std::size_t>(g.face)] != g.other_face)
      throw Error(ErrorCode::BadPermutation, "label map does not send face to face in " + where.str());
    if (g.tet == g.other_tet && g.face == g.other_face)
      throw Error(ErrorCode::InconsistentInvolution, "face glued to itself in " + where.str());
    Partner& a = slot_at(g.tet, g.face);
    Partner& b = slot_at(g.other_tet, g.other_face);
    if (a.tet >= 0 || b.tet >= 0)
      throw Error(ErrorCode::DuplicateGluing, "face already glued in " + where.str());
    a = Partner{g.other_tet, g.other_face, g.perm};
    b = Partner{g.tet, g.face, perm_inverse(g.perm)};
  }
  for (int t = 0; t < num_tets; ++t)
    for (int f = 0; f < 4; ++f)
      if (slot_at(t, f).tet < 0)
        throw Error(ErrorCode::UnpairedFace,
                    "face " + std::to_string(f) + " of tetrahedron " + std::to_string(t) + " is unglued");
}

std::vector<Gluing> IdealTriangulation::gluings() const {
  std::vector<Gluing> out;
  for (int t = 0; t < num_tets_; ++t) {
    for (int f = 0; f < 4; ++f) {
      const Partner& p = partner(t, f);
      if (std::tie(t, f) < std::tie(p.tet, p.face)) out.push_back(Gluing{t, f, p.tet, p.face, p.perm});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_int(std::string_view tok, int line_no) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line_no) + ": expected integer, got '" + std::string(tok) + "'");
  return value;
}

}  // namespace

IdealTriangulation parse_triangulation(std::string_view text) {
  enum class State { Header, Count, Body } state = State::Header;
  int num_tets = 0;
  std::vector<Gluing> gluings;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto c = line.find('%'); c != std::string_view::npos) line = line.substr(0, c);
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& msg) {
      return Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
    };
    switch (state) {
      case State::Header:
        if (tok.size() != 2 || tok[0] != "idtri" || tok[1] != "v1") throw fail("expected 'idtri v1'");
        state = State::Count;
        break;
      case State::Count:
        if (tok.size() != 2 || tok[0] != "tets") throw fail("expected 'tets <g>'");
        num_tets = parse_int(tok[1], line_no);
        if (num_tets < 1) throw fail("tetrahedron count must be positive");
        state = State::Body;
        break;
      case State::Body: {
        if (tok[0] != "glue") throw fail("unknown directive '" + std::string(tok[0]) + "'");
        if (tok.size() != 11 || tok[3] != "->" || tok[6] != "perm")
          throw fail("expected 'glue t f -> t' f' perm p0 p1 p2 p3'");
        Gluing g;
        g.tet = parse_int(tok[1], line_no);
        g.face = parse_int(tok[2], line_no);
        g.other_tet = parse_int(tok[4], line_no);
        g.other_face = parse_int(tok[5], line_no);
        for (std::size_t i = 0; i < 4; ++i) g.perm[i] = parse_int(tok[7 + i], line_no);
        gluings.push_back(g);
        break;
      }
    }
  }
  if (state != State::Body) throw Error(ErrorCode::ParseError, "missing header or tetrahedron count");
  return IdealTriangulation(num_tets, gluings);
}

IdealTriangulation load_triangulation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_triangulation(buf.str());
}

std::string serialize(const IdealTriangulation& tri) {
  std::ostringstream out;
  out << "idtri v1\ntets " << tri.size() << '\n';
  for (const Gluing& g : tri.gluings()) {
    out << "glue " << g.tet << ' ' << g.face << " -> " << g.other_tet << ' ' << g.other_face << " perm "
        << g.perm[0] << ' ' << g.perm[1] << ' ' << g.perm[2] << ' ' << g.perm[3] << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

// Sign of the order-preserving-relative map a -> p[a] on the increasing list
// of labels other than `skip`.
int restricted_sign(const Perm4& p, int skip) {
  std::array<int, 3> img{};
  std::size_t k = 0;
  for (int a = 0; a < 4; ++a)
    if (a != skip) img[k++] = p[static_cast<std::size_t>(a)];
  int inv = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (img[i] > img[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

std::vector<int> compress(detail::SignedUnionFind& uf, std::size_t n, int& count) {
  std::vector<int> label(n, -1);
  std::vector<int> root_label(n, -1);
  count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = uf.find(i).first;
    if (root_label[r] < 0) root_label[r] = count++;
    label[i] = root_label[r];
  }
  return label;
}

}  // namespace

CellQuotient quotient_cells(const IdealTriangulation& tri) {
  const int g = tri.size();
  const auto n = static_cast<std::size_t>(g);
  CellQuotient q;
  q.num_tets = g;

  detail::SignedUnionFind verts(4 * n), edges(6 * n), faces(4 * n), comps(n);
  for (int t = 0; t < g; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& p = tri.partner(t, f);
      comps.unite(static_cast<std::size_t>(t), static_cast<std::size_t>(p.tet), 1);
      for (int v = 0; v < 4; ++v)
        if (v != f)
          verts.unite(static_cast<std::size_t>(4 * t + v),
                      static_cast<std::size_t>(4 * p.tet + p.perm[static_cast<std::size_t>(v)]), 1);
      for (std::size_t e = 0; e < 6; ++e) {
        const int a = kTetEdges[e][0];
        const int b = kTetEdges[e][1];
        if (a == f || b == f) continue;
        const int pa = p.perm[static_cast<std::size_t>(a)];
        const int pb = p.perm[static_cast<std::size_t>(b)];
        edges.unite(6 * static_cast<std::size_t>(t) + e,
                    static_cast<std::size_t>(6 * p.tet + edge_index(pa, pb)), pa < pb ? 1 : -1);
      }
      if (std::tie(t, f) < std::tie(p.tet, p.face))
        faces.unite(static_cast<std::size_t>(4 * t + f), static_cast<std::size_t>(4 * p.tet + p.face),
                    restricted_sign(p.perm, f));
    }
  }

  q.vertex_class = compress(verts, 4 * n, q.num_vertices);
  q.edge_class = compress(edges, 6 * n, q.num_edges);
  q.face_class = compress(faces, 4 * n, q.num_faces);
  q.component = compress(comps, n, q.num_components);

  q.edge_sign.resize(6 * n);
  q.edge_reversed.assign(static_cast<std::size_t>(q.num_edges), false);
  for (std::size_t i = 0; i < 6 * n; ++i) {
    const auto [root, sign] = edges.find(i);
    q.edge_sign[i] = sign;
    if (edges.conflicted(root)) q.edge_reversed[static_cast<std::size_t>(q.edge_class[i])] = true;
  }
  q.face_sign.resize(4 * n);
  for (std::size_t i = 0; i < 4 * n; ++i) q.face_sign[i] = faces.find(i).second;
  return q;
}

std::vector<LinkSurface> vertex_links(const IdealTriangulation& tri) {
  const int g = tri.size();
  const auto n = static_cast<std::size_t>(g);
  const CellQuotient q = quotient_cells(tri);

  // Link triangle (t, v); its edge lying in face f is link-edge (t, v, f);
  // its corner pointing along edge vw is link-vertex (t, v, w).
  detail::SignedUnionFind ledges(16 * n), lverts(16 * n), corners(4 * n);
  std::vector<int> incidence(16 * n, 0);
  for (int t = 0; t < g; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& p = tri.partner(t, f);
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        const int pv = p.perm[static_cast<std::size_t>(v)];
        ++incidence[static_cast<std::size_t>(16 * t + 4 * v + f)];
        ledges.unite(static_cast<std::size_t>(16 * t + 4 * v + f),
                     static_cast<std::size_t>(16 * p.tet + 4 * pv + p.face), 1);
        for (int w = 0; w < 4; ++w) {
          if (w == v || w == f) continue;
          lverts.unite(static_cast<std::size_t>(16 * t + 4 * v + w),
                       static_cast<std::size_t>(16 * p.tet + 4 * pv + p.perm[static_cast<std::size_t>(w)]), 1);
        }
        // Restricting the label map to the corner gives a triangle map whose
        // parity decides whether orientations can agree.
        std::array<int, 3> img{};
        std::size_t k = 0;
        for (int a = 0; a < 4; ++a)
          if (a != v) img[k++] = p.perm[static_cast<std::size_t>(a)];
        int inv = 0;
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = i + 1; j < 3; ++j)
            if (img[i] > img[j]) ++inv;
        corners.unite(static_cast<std::size_t>(4 * t + v), static_cast<std::size_t>(4 * p.tet + pv),
                      inv % 2 == 0 ? -1 : 1);
      }
    }
  }

  std::vector<LinkSurface> links(static_cast<std::size_t>(q.num_vertices));
  for (std::size_t c = 0; c < links.size(); ++c) links[c].vertex_class = static_cast<int>(c);

  std::map<std::size_t, int> edge_count;
  std::vector<std::vector<std::size_t>> vert_roots(links.size());
  for (int t = 0; t < g; ++t) {
    for (int v = 0; v < 4; ++v) {
      const auto cls = static_cast<std::size_t>(q.vertex_class[static_cast<std::size_t>(4 * t + v)]);
      LinkSurface& L = links[cls];
      ++L.num_triangles;
      if (corners.conflicted(corners.find(static_cast<std::size_t>(4 * t + v)).first)) L.orientable = false;
      for (int f = 0; f < 4; ++f) {
        if (f == v) continue;
        const std::size_t idx = static_cast<std::size_t>(16 * t + 4 * v + f);
        edge_count[ledges.find(idx).first] += incidence[idx];
        vert_roots[cls].push_back(lverts.find(idx).first);
      }
    }
  }
  std::vector<int> edges_per_link(links.size(), 0);
  for (const auto& [root, count] : edge_count) {
    if (count != 2)
      throw Error(ErrorCode::NonManifoldLink,
                  "link edge with " + std::to_string(count) + " incident triangles");
    const std::size_t t = root / 16;
    const std::size_t v = (root / 4) % 4;
    ++edges_per_link[static_cast<std::size_t>(q.vertex_class[4 * t + v])];
  }
  for (std::size_t c = 0; c < links.size(); ++c) {
    auto& roots = vert_roots[c];
    std::sort(roots.begin(), roots.end());
    const auto nv = static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());
    LinkSurface& L = links[c];
    L.euler_char = nv - edges_per_link[c] + L.num_triangles;
    L.genus_or_crosscaps = L.orientable ? (2 - L.euler_char) / 2 : 2 - L.euler_char;
  }
  return links;
}

Rational euler_characteristic_M(const IdealTriangulation& tri) {
  int total = 0;
  for (const LinkSurface& L : vertex_links(tri)) total += L.euler_char;
  if (total % 2 != 0)
    throw Error(ErrorCode::NonIntegral, "link Euler characteristics sum to the odd value " + std::to_string(total));
  return Rational(total / 2);
}

Orientation orientability(const IdealTriangulation& tri) {
  const auto n = static_cast<std::size_t>(tri.size());
  detail::SignedUnionFind uf(n);
  for (int t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& p = tri.partner(t, f);
      uf.unite(static_cast<std::size_t>(t), static_cast<std::size_t>(p.tet), -perm_sign(p.perm));
    }
  Orientation out;
  out.orientable = true;
  out.signs.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto [root, sign] = uf.find(t);
    if (uf.conflicted(root)) out.orientable = false;
    out.signs[t] = sign;
  }
  return out;
}

MgDetection detect_Mg(const IdealTriangulation& tri) {
  const int g = tri.size();
  if (g < 2 || !orientability(tri).orientable) return {};
  const CellQuotient q = quotient_cells(tri);
  if (q.num_components != 1 || q.num_vertices != 1 || q.num_edges != 1) return {};
  try {
    if (euler_characteristic_M(tri) != Rational(1 - g)) return {};
  } catch (const Error&) {
    return {};
  }
  return {true, g};
}

// ---------------------------------------------------------------------------

namespace {

using TermKey = std::pair<int, Perm4>;

std::map<TermKey, Rational> merged(const MarkedCycle& z) {
  std::map<TermKey, Rational> out;
  for (const MarkedTerm& t : z.terms) out[{t.tet, t.ordering}] += t.coeff;
  return out;
}

}  // namespace

Rational MarkedCycle::l1_norm() const {
  Rational sum;
  for (const auto& [key, c] : merged(*this)) sum += abs(c);
  return sum;
}

MarkedCycle MarkedCycle::scaled(const Rational& c) const {
  MarkedCycle out = *this;
  for (MarkedTerm& t : out.terms) t.coeff *= c;
  return out;
}

MarkedCycle alternated_fundamental_cycle(const IdealTriangulation& tri) {
  const Orientation o = orientability(tri);
  if (!o.orientable) throw Error(ErrorCode::NotOrientable, "triangulation is not orientable");
  MarkedCycle z;
  z.terms.reserve(static_cast<std::size_t>(24 * tri.size()));
  for (int j = 0; j < tri.size(); ++j)
    for (const Perm4& tau : all_perms())
      z.terms.push_back({j, tau, Rational(perm_sign(tau) * o.signs[static_cast<std::size_t>(j)], 24)});
  return z;
}

bool verify_marked_cycle(const IdealTriangulation& tri, const MarkedCycle& z) {
  // Triangle instances are keyed on the smaller slot of each face pair, with
  // the vertex order transported through the gluing.
  std::map<std::array<int, 5>, Rational> boundary;
  for (const MarkedTerm& term : z.terms) {
    if (term.tet < 0 || term.tet >= tri.size() || !is_permutation(term.ordering)) return false;
    if (term.coeff.is_zero()) continue;
    for (std::size_t i = 0; i < 4; ++i) {
      int t = term.tet;
      int f = term.ordering[i];
      std::array<int, 3> tri_order{};
      std::size_t k = 0;
      for (std::size_t j = 0; j < 4; ++j)
        if (j != i) tri_order[k++] = term.ordering[j];
      const auto& p = tri.partner(t, f);
      if (std::tie(p.tet, p.face) < std::tie(t, f)) {
        for (int& a : tri_order) a = p.perm[static_cast<std::size_t>(a)];
        t = p.tet;
        f = p.face;
      }
      Rational c = i % 2 == 0 ? term.coeff : -term.coeff;
      boundary[{t, f, tri_order[0], tri_order[1], tri_order[2]}] += c;
    }
  }
  return std::all_of(boundary.begin(), boundary.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

std::vector<Rational> local_degrees(const IdealTriangulation& tri, const MarkedCycle& z) {
  const Orientation o = orientability(tri);
  std::vector<Rational> out(static_cast<std::size_t>(tri.size()));
  for (const MarkedTerm& term : z.terms) {
    if (term.tet < 0 || term.tet >= tri.size() || !is_permutation(term.ordering)) continue;
    const auto t = static_cast<std::size_t>(term.tet);
    const int orient = o.orientable ? o.signs[t] : 1;
    out[t] += term.coeff * Rational(perm_sign(term.ordering) * orient);
  }
  return out;
}

}  // namespace isv
