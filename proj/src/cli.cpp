#include "isv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include "isv/bounds.hpp"
#include "isv/error.hpp"
#include "isv/extremal.hpp"
#include "isv/idtri.hpp"
#include "isv/specfun.hpp"
#include "isv/trunc.hpp"

namespace isv::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kDigits = 12;

// Rounds to 12 significant digits so the shortest round-trip representation
// written by the JSON encoder has at most that many.
double sig12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, kDigits);
  double y = 0.0;
  std::from_chars(buf, res.ptr, y);
  return y;
}

std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, kDigits);
  return std::string(buf, res.ptr);
}

ordered_json num(double x) { return sig12(x); }

template <class T>
ordered_json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) return num(*v);
  else return *v;
}

std::string opt_text(const std::optional<double>& v) { return v ? fmt(*v) : "none"; }

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

struct AnalyzeOptions {
  std::string file;
  bool json = false;
};

void cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
  const IdealTriangulation tri = load_triangulation(o.file);
  const CellQuotient q = quotient_cells(tri);
  const Orientation orient = orientability(tri);
  const int reversed =
      static_cast<int>(std::count(q.edge_reversed.begin(), q.edge_reversed.end(), true));

  ordered_json links = ordered_json::array();
  std::optional<std::string> chi_m;
  std::string chi_error;
  try {
    for (const LinkSurface& L : vertex_links(tri))
      links.push_back({{"vertex_class", L.vertex_class},
                       {"euler_char", L.euler_char},
                       {"orientable", L.orientable},
                       {"genus_or_crosscaps", L.genus_or_crosscaps}});
    chi_m = euler_characteristic_M(tri).to_string();
  } catch (const Error& e) {
    chi_error = e.what();
  }

  const MgDetection mg = detect_Mg(tri);
  std::optional<bool> verified;
  std::optional<std::string> norm;
  std::optional<bool> degrees_one;
  if (orient.orientable) {
    const MarkedCycle z = alternated_fundamental_cycle(tri);
    verified = verify_marked_cycle(tri, z);
    norm = z.l1_norm().to_string();
    const auto deg = local_degrees(tri, z);
    degrees_one = std::all_of(deg.begin(), deg.end(), [](const Rational& r) { return r == Rational(1); });
  }
  const HomologyRanks h = marked_homology_ranks(tri);
  std::optional<BoundReport> report;
  if (mg.is_Mg) {
    ManifoldDescriptor d;
    d.kind = ManifoldKind::Mg;
    d.g = mg.g;
    d.complexity_upper = tri.size();
    report = isv_bounds(d);
  }

  if (o.json) {
    ordered_json j;
    j["file"] = o.file;
    j["tets"] = tri.size();
    j["vertices"] = q.num_vertices;
    j["edges"] = q.num_edges;
    j["faces"] = q.num_faces;
    j["components"] = q.num_components;
    j["reversed_edges"] = reversed;
    j["links"] = links;
    j["euler_characteristic_M"] = chi_m ? ordered_json(*chi_m) : ordered_json(nullptr);
    if (!chi_error.empty()) j["link_error"] = chi_error;
    j["orientable"] = orient.orientable;
    j["is_Mg"] = mg.is_Mg;
    j["g"] = mg.is_Mg ? ordered_json(mg.g) : ordered_json(nullptr);
    j["cycle_verified"] = opt(verified);
    j["cycle_norm"] = opt(norm);
    j["local_degrees_one"] = opt(degrees_one);
    j["homology_ranks"] = h.rank;
    if (report) {
      j["isv"] = {{"lower", num(report->lower)},
                  {"upper", opt(report->upper)},
                  {"exact", opt(report->exact)},
                  {"provenance", report->provenance}};
    } else {
      j["isv"] = nullptr;
    }
    emit(out, j);
    return;
  }
  out << "file: " << o.file << '\n'
      << "tets: " << tri.size() << '\n'
      << "cells: vertices " << q.num_vertices << ", edges " << q.num_edges << ", faces " << q.num_faces
      << '\n'
      << "components: " << q.num_components << '\n'
      << "reversed edges: " << reversed << '\n';
  for (const auto& L : links)
    out << "link " << L["vertex_class"].get<int>() << ": chi " << L["euler_char"].get<int>() << ", "
        << (L["orientable"].get<bool>() ? "orientable genus " : "non-orientable crosscaps ")
        << L["genus_or_crosscaps"].get<int>() << '\n';
  if (!chi_error.empty()) out << "links: " << chi_error << '\n';
  out << "chi(M): " << chi_m.value_or("undefined") << '\n'
      << "orientable: " << (orient.orientable ? "yes" : "no") << '\n'
      << "M_g: " << (mg.is_Mg ? "yes, g = " + std::to_string(mg.g) : std::string("no")) << '\n';
  if (verified)
    out << "alternated cycle: " << (*verified ? "verified" : "NOT a cycle") << ", norm " << *norm
        << ", local degrees " << (*degrees_one ? "all 1" : "not all 1") << '\n';
  out << "homology ranks (relative): " << h.rank[0] << ' ' << h.rank[1] << ' ' << h.rank[2] << ' '
      << h.rank[3] << '\n';
  if (report) out << "isv: " << fmt(*report->exact) << '\n';
}

// ---------------------------------------------------------------------------

struct RegularOptions {
  std::optional<int> g;
  std::optional<double> ell;
  bool json = false;
};

void cmd_regular(const RegularOptions& o, std::ostream& out) {
  double ell = 0.0;
  if (o.g) {
    if (*o.g < 2) throw Error(ErrorCode::BadGenus, "g must be at least 2");
    ell = ell_g(*o.g);
  } else {
    ell = *o.ell;
  }
  const RegularTruncTet t = regular_tet_from_ell(ell);
  const double r = regular_radius(t.theta);
  const int rows = o.g ? std::max(*o.g, 2) : 6;
  ordered_json table = ordered_json::array();
  for (int k = 2; k <= rows; ++k) {
    const double lk = ell_g(k);
    table.push_back({{"g", k},
                     {"theta", num(kPi / (3.0 * k))},
                     {"ell", num(lk)},
                     {"volume", num(regular_volume(lk))}});
  }
  if (o.json) {
    ordered_json j;
    j["g"] = opt(o.g);
    j["theta"] = num(t.theta);
    j["ell"] = num(t.ell);
    j["radius"] = num(r);
    j["volume"] = num(t.volume);
    j["table"] = table;
    emit(out, j);
    return;
  }
  out << "theta: " << fmt(t.theta) << '\n'
      << "ell: " << fmt(t.ell) << '\n'
      << "radius: " << fmt(r) << '\n'
      << "volume: " << fmt(t.volume) << '\n'
      << "g  theta  ell  volume\n";
  for (const auto& row : table)
    out << row["g"].get<int>() << "  " << fmt(row["theta"]) << "  " << fmt(row["ell"]) << "  "
        << fmt(row["volume"]) << '\n';
}

// ---------------------------------------------------------------------------

struct VlOptions {
  double ell = 0.0;
  int restarts = 50;
  std::uint64_t seed = 0;
  int threads = 0;
  int max_iters = 2000;
  bool json = false;
};

void cmd_vl(const VlOptions& o, std::ostream& out) {
  SearchConfig cfg;
  cfg.ell_min = o.ell;
  cfg.restarts = o.restarts;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.max_iters = o.max_iters;
  const SearchResult res = estimate_Vl(cfg);
  const char* label = res.certified_range ? "certified" : "heuristic";
  if (o.json) {
    ordered_json j;
    j["ell_min"] = num(o.ell);
    j["restarts"] = o.restarts;
    j["seed"] = o.seed;
    j["best_volume"] = num(res.best_volume);
    j["feasible"] = res.feasible;
    j["label"] = label;
    j["restart_index"] = res.restart_index;
    ordered_json lengths = ordered_json::array();
    for (double l : res.edge_lengths) lengths.push_back(num(l));
    j["edge_lengths"] = lengths;
    ordered_json verts = ordered_json::array();
    for (const KleinPoint& p : res.best_config.v)
      verts.push_back({num(p.point().x()), num(p.point().y()), num(p.point().z())});
    j["vertices"] = verts;
    emit(out, j);
    return;
  }
  out << "ell_min: " << fmt(o.ell) << '\n'
      << "best volume: " << fmt(res.best_volume) << " (" << label << ")\n"
      << "feasible: " << (res.feasible ? "yes" : "no") << '\n'
      << "restart: " << res.restart_index << '\n'
      << "edge lengths:";
  for (double l : res.edge_lengths) out << ' ' << fmt(l);
  out << '\n';
  for (const KleinPoint& p : res.best_config.v)
    out << "vertex: " << fmt(p.point().x()) << ' ' << fmt(p.point().y()) << ' ' << fmt(p.point().z())
        << '\n';
}

// ---------------------------------------------------------------------------

struct BoundsOptions {
  std::string kind;
  std::optional<double> volume;
  std::optional<double> ell;
  std::optional<int> g;
  std::optional<int> ctets;
  bool amenable = false;
  bool json = false;
};

void cmd_bounds(const BoundsOptions& o, std::ostream& out) {
  ManifoldDescriptor d;
  d.kind = *parse_kind(o.kind);
  d.volume = o.volume;
  d.return_length = o.ell;
  d.g = o.g;
  d.complexity_upper = o.ctets;
  d.amenable_boundary = o.amenable;
  const BoundReport r = isv_bounds(d);
  const std::string relation = amenable_equality(d);
  if (o.json) {
    ordered_json j;
    j["kind"] = to_string(d.kind);
    j["lower"] = num(r.lower);
    j["upper"] = opt(r.upper);
    j["exact"] = opt(r.exact);
    j["provenance"] = r.provenance;
    j["notes"] = r.notes;
    j["boundary_genus_two"] = r.boundary_genus_two;
    j["relation"] = relation;
    emit(out, j);
    return;
  }
  out << "kind: " << to_string(d.kind) << '\n'
      << "lower: " << fmt(r.lower) << '\n'
      << "upper: " << opt_text(r.upper) << '\n'
      << "exact: " << opt_text(r.exact) << '\n';
  for (const auto& p : r.provenance) out << "by: " << p << '\n';
  for (const auto& n : r.notes) out << "note: " << n << '\n';
  out << "relation: " << relation << '\n';
}

// ---------------------------------------------------------------------------

struct DegreeOptions {
  int g = 0;
  int gp = 0;
  bool json = false;
};

void cmd_degree(const DegreeOptions& o, std::ostream& out) {
  const DegreeBounds b = degree_bounds(o.g, o.gp);
  if (o.json) {
    ordered_json j;
    j["g"] = o.g;
    j["g_prime"] = o.gp;
    j["ideal"] = b.ideal;
    j["double"] = b.double_;
    j["boundary"] = b.boundary;
    j["ideal_ratio"] = num(b.ideal_ratio);
    j["double_ratio"] = num(b.double_ratio);
    j["boundary_ratio"] = num(b.boundary_ratio);
    emit(out, j);
    return;
  }
  out << "ideal: " << b.ideal << " (ratio " << fmt(b.ideal_ratio) << ")\n"
      << "double: " << b.double_ << " (ratio " << fmt(b.double_ratio) << ")\n"
      << "boundary: " << b.boundary << " (ratio " << fmt(b.boundary_ratio) << ")\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ideal simplicial volume toolkit"};
  app.name("isv");
  app.require_subcommand(1);

  AnalyzeOptions analyze;
  auto* a = app.add_subcommand("analyze", "Analyze an ideal triangulation file");
  a->add_option("file", analyze.file, "Triangulation in idtri v1 format")->required();
  a->add_flag("--json", analyze.json, "JSON output");

  RegularOptions regular;
  auto* r = app.add_subcommand("regular", "Regular truncated tetrahedron data");
  auto* rg = r->add_option("--g", regular.g, "Genus; uses dihedral angle pi/(3g)");
  auto* rl = r->add_option("--ell", regular.ell, "Edge length")->check(CLI::PositiveNumber);
  rg->excludes(rl);
  r->add_flag("--json", regular.json, "JSON output");

  VlOptions vl;
  auto* v = app.add_subcommand("vl", "Estimate V_l by multistart search");
  v->add_option("--ell", vl.ell, "Minimal internal edge length")->required()->check(CLI::PositiveNumber);
  v->add_option("--restarts", vl.restarts, "Number of restarts")->check(CLI::PositiveNumber);
  v->add_option("--seed", vl.seed, "Random seed");
  v->add_option("--threads", vl.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  v->add_option("--max-iters", vl.max_iters, "Nelder-Mead iterations per penalty stage")
      ->check(CLI::PositiveNumber);
  v->add_flag("--json", vl.json, "JSON output");

  BoundsOptions bounds;
  auto* b = app.add_subcommand("bounds", "Bounds on the ideal simplicial volume");
  b->add_option("--kind", bounds.kind, "cusped | geodesic | mg | generic")
      ->required()
      ->check(CLI::IsMember({"cusped", "geodesic", "mg", "generic", "CuspedHyperbolic",
                             "GeodesicBoundary", "Mg", "Generic"}));
  b->add_option("--volume", bounds.volume, "Hyperbolic volume");
  b->add_option("--ell", bounds.ell, "Return length");
  b->add_option("--g", bounds.g, "Genus for kind mg");
  b->add_option("--ctets", bounds.ctets, "Tetrahedra in a known ideal triangulation");
  b->add_flag("--amenable", bounds.amenable, "All boundary components have amenable fundamental group");
  b->add_flag("--json", bounds.json, "JSON output");

  DegreeOptions degree;
  auto* d = app.add_subcommand("degree", "Compare mapping degree bounds between M_g and M_g'");
  d->add_option("--g", degree.g, "Genus of the domain")->required();
  d->add_option("--gp", degree.gp, "Genus of the target")->required();
  d->add_flag("--json", degree.json, "JSON output");

  std::ostringstream buffer;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (r->parsed() && !regular.g && !regular.ell)
      throw CLI::ValidationError("regular", "needs --g or --ell");
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (a->parsed()) cmd_analyze(analyze, buffer);
    if (r->parsed()) cmd_regular(regular, buffer);
    if (v->parsed()) cmd_vl(vl, buffer);
    if (b->parsed()) cmd_bounds(bounds, buffer);
    if (d->parsed()) cmd_degree(degree, buffer);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  out << buffer.str();
  return kExitOk;
}

}  // namespace isv::cli
