#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "isv/bounds.hpp"
#include "isv/error.hpp"
#include "isv/extremal.hpp"
#include "isv/hyperlin.hpp"
#include "isv/idtri.hpp"
#include "isv/specfun.hpp"
#include "isv/trunc.hpp"

namespace py = pybind11;
using namespace isv;

namespace {

using Triple = std::array<double, 3>;

KleinPoint point(const Triple& p) { return KleinPoint(p[0], p[1], p[2]); }

TruncTetConfig config(const std::array<Triple, 4>& v) {
  TruncTetConfig c;
  for (int i = 0; i < 4; ++i) c.v[i] = point(v[static_cast<std::size_t>(i)]);
  return c;
}

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(r.num(), r.den());
}

py::dict cells_dict(const CellQuotient& q) {
  py::dict d;
  d["vertices"] = q.num_vertices;
  d["edges"] = q.num_edges;
  d["faces"] = q.num_faces;
  d["tets"] = q.num_tets;
  d["components"] = q.num_components;
  int reversed = 0;
  for (bool b : q.edge_reversed) reversed += b ? 1 : 0;
  d["reversed_edges"] = reversed;
  return d;
}

py::dict report_dict(const BoundReport& r) {
  py::dict d;
  d["lower"] = r.lower;
  d["upper"] = r.upper ? py::cast(*r.upper) : py::none();
  d["exact"] = r.exact ? py::cast(*r.exact) : py::none();
  d["provenance"] = r.provenance;
  d["notes"] = r.notes;
  d["boundary_genus_two"] = r.boundary_genus_two;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ideal simplicial volume toolkit: hyperbolic truncated tetrahedra, ideal triangulations and bounds.";

  static py::exception<Error> error(m, "IsvError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(std::string(to_string(e.code())), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  m.def("lobachevsky", &lobachevsky, py::arg("theta"));
  m.def("v8", &v8);
  m.def("v3", &v3);
  m.def("edge_integrand", &edge_integrand, py::arg("t"));

  m.def(
      "edge_length", [](const Triple& a, const Triple& b) { return edge_length(point(a), point(b)); },
      py::arg("a"), py::arg("b"));

  m.def("ell_g", &ell_g, py::arg("g"));
  m.def("regular_volume", &regular_volume, py::arg("ell"));
  m.def("regular_theta_of_ell", &regular_theta_of_ell, py::arg("ell"));
  m.def("regular_ell_of_theta", &regular_ell_of_theta, py::arg("theta"));
  m.def(
      "regular_config",
      [](double theta) {
        const TruncTetConfig c = build_regular_config(theta);
        std::array<Triple, 4> out{};
        for (int i = 0; i < 4; ++i) {
          const auto& p = c.v[i].point();
          out[static_cast<std::size_t>(i)] = {p.x(), p.y(), p.z()};
        }
        return out;
      },
      py::arg("theta"));
  m.def(
      "truncated_volume",
      [](const std::array<Triple, 4>& v, double tol) {
        return volume(truncation_polytope(config(v)), tol);
      },
      py::arg("vertices"), py::arg("tol") = kDefaultVolumeTol);
  m.def(
      "internal_edge_lengths", [](const std::array<Triple, 4>& v) { return internal_edge_lengths(config(v)); },
      py::arg("vertices"));

  m.def(
      "estimate_vl",
      [](double ell_min, int restarts, std::uint64_t seed, int threads, int max_iters) {
        SearchConfig c;
        c.ell_min = ell_min;
        c.restarts = restarts;
        c.seed = seed;
        c.threads = threads;
        c.max_iters = max_iters;
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = estimate_Vl(c);
        }
        py::dict d;
        d["best_volume"] = r.best_volume;
        d["feasible"] = r.feasible;
        d["certified_range"] = r.certified_range;
        d["restart_index"] = r.restart_index;
        d["edge_lengths"] = r.edge_lengths;
        std::vector<Triple> verts;
        for (const auto& p : r.best_config.v) verts.push_back({p.point().x(), p.point().y(), p.point().z()});
        d["vertices"] = verts;
        return d;
      },
      py::arg("ell_min"), py::arg("restarts") = 50, py::arg("seed") = 0, py::arg("threads") = 0,
      py::arg("max_iters") = 2000);

  py::class_<IdealTriangulation>(m, "Triangulation")
      .def_static("parse", [](const std::string& text) { return parse_triangulation(text); }, py::arg("text"))
      .def_static("load", &load_triangulation, py::arg("path"))
      .def("serialize", &serialize)
      .def_property_readonly("num_tets", &IdealTriangulation::size)
      .def("cells", [](const IdealTriangulation& t) { return cells_dict(quotient_cells(t)); })
      .def("links",
           [](const IdealTriangulation& t) {
             py::list out;
             for (const auto& L : vertex_links(t)) {
               py::dict d;
               d["vertex_class"] = L.vertex_class;
               d["euler_char"] = L.euler_char;
               d["orientable"] = L.orientable;
               d["genus_or_crosscaps"] = L.genus_or_crosscaps;
               out.append(d);
             }
             return out;
           })
      .def("euler_characteristic", [](const IdealTriangulation& t) { return fraction(euler_characteristic_M(t)); })
      .def("orientable", [](const IdealTriangulation& t) { return orientability(t).orientable; })
      .def("detect_mg",
           [](const IdealTriangulation& t) -> std::optional<int> {
             const auto d = detect_Mg(t);
             if (!d.is_Mg) return std::nullopt;
             return d.g;
           })
      .def("homology_ranks", [](const IdealTriangulation& t) { return marked_homology_ranks(t).rank; })
      .def("fundamental_cycle", [](const IdealTriangulation& t) {
        const MarkedCycle z = alternated_fundamental_cycle(t);
        py::list degrees;
        for (const auto& r : local_degrees(t, z)) degrees.append(fraction(r));
        py::dict d;
        d["terms"] = z.terms.size();
        d["norm"] = fraction(z.l1_norm());
        d["verified"] = verify_marked_cycle(t, z);
        d["local_degrees"] = degrees;
        return d;
      });

  m.def(
      "bounds",
      [](const std::string& kind, std::optional<double> volume, std::optional<double> ell, std::optional<int> g,
         std::optional<int> ctets, bool amenable) {
        const auto k = parse_kind(kind);
        if (!k) throw Error(ErrorCode::InvalidArgument, "unknown kind '" + kind + "'");
        ManifoldDescriptor d;
        d.kind = *k;
        d.volume = volume;
        d.return_length = ell;
        d.g = g;
        d.complexity_upper = ctets;
        d.amenable_boundary = amenable;
        py::dict out = report_dict(isv_bounds(d));
        out["kind"] = std::string(to_string(d.kind));
        out["relation"] = amenable_equality(d);
        return out;
      },
      py::arg("kind"), py::kw_only(), py::arg("volume") = py::none(), py::arg("ell") = py::none(),
      py::arg("g") = py::none(), py::arg("ctets") = py::none(), py::arg("amenable") = false);

  m.def(
      "degree_bounds",
      [](int g, int g_prime) {
        const DegreeBounds b = degree_bounds(g, g_prime);
        py::dict d;
        d["ideal"] = b.ideal;
        d["double"] = b.double_;
        d["boundary"] = b.boundary;
        d["ideal_ratio"] = b.ideal_ratio;
        d["double_ratio"] = b.double_ratio;
        d["boundary_ratio"] = b.boundary_ratio;
        return d;
      },
      py::arg("g"), py::arg("g_prime"));
}
