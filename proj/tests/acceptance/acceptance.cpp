#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "isv/bounds.hpp"
#include "isv/error.hpp"
#include "isv/extremal.hpp"
#include "isv/idtri.hpp"
#include "isv/specfun.hpp"
#include "isv/trunc.hpp"

using namespace isv;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = s < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s %d  %.2fs (budget %.0fs)%s  %s\n", pass ? "PASS" : "FAIL", id, s, budget_s,
              in_time ? "" : " over budget", o.detail.c_str());
  std::fflush(stdout);
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(lo) < 0) == (f(mid) < 0)) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

IdealTriangulation fixture(const std::string& name) {
  return load_triangulation(std::string(ISV_DATA_DIR) + "/triangulations/" + name + ".tri");
}

std::vector<Gluing> random_gluings(int g, std::mt19937_64& rng) {
  std::vector<int> slots(static_cast<std::size_t>(4 * g));
  for (int i = 0; i < 4 * g; ++i) slots[static_cast<std::size_t>(i)] = i;
  std::shuffle(slots.begin(), slots.end(), rng);
  std::vector<Gluing> out;
  for (std::size_t i = 0; i < slots.size(); i += 2) {
    Gluing gl{slots[i] / 4, slots[i] % 4, slots[i + 1] / 4, slots[i + 1] % 4, {}};
    std::vector<int> rest;
    for (int x = 0; x < 4; ++x)
      if (x != gl.other_face) rest.push_back(x);
    std::shuffle(rest.begin(), rest.end(), rng);
    std::size_t k = 0;
    for (int x = 0; x < 4; ++x) gl.perm[static_cast<std::size_t>(x)] = x == gl.face ? gl.other_face : rest[k++];
    out.push_back(gl);
  }
  return out;
}

bool euler_identity(const IdealTriangulation& tri) {
  const CellQuotient q = quotient_cells(tri);
  int total = 0;
  for (const auto& L : vertex_links(tri)) total += L.euler_char;
  return total % 2 == 0 && q.euler_characteristic() == q.num_vertices - total / 2;
}

}  // namespace

int main() {
  criterion(1, 1, [] {
    const double v = v8();
    return Outcome{std::abs(v - 3.664) <= 5e-4 && std::abs(v - 3.663862) < 1e-6, "v8 = " + num(v)};
  });

  criterion(2, 1, [] {
    const double l2 = ell_g(2);
    const double c = std::cos(kPi / 6) / (2 * std::cos(kPi / 6) - 1);
    const double oracle = bisect([&](double x) { return std::cosh(x) - c; }, 0.0, 5.0);
    const double vol = regular_volume(l2);
    return Outcome{std::abs(vol - 3.226) <= 5e-4 && std::abs(l2 - oracle) <= 1e-6,
                   "ell_2 = " + num(l2) + ", vol = " + num(vol)};
  });

  criterion(3, 30, [] {
    double worst = 0.0;
    for (double theta : {kPi / 6, kPi / 9, kPi / 12}) {
      const double q = volume(truncation_polytope(build_regular_config(theta)));
      worst = std::max(worst, std::abs(q - regular_volume(regular_ell_of_theta(theta))));
    }
    return Outcome{worst <= 1e-3, "max deviation " + num(worst)};
  });

  criterion(4, 10, [] {
    bool increasing = true;
    double prev = -1.0;
    for (int i = 1; i <= 1000; ++i) {
      const double t = regular_theta_of_ell(20.0 * i / 1000.0);
      if (!(t > prev)) increasing = false;
      prev = t;
    }
    const double lo = regular_theta_of_ell(1e-4);
    const double hi = regular_theta_of_ell(20.0);
    return Outcome{increasing && lo <= 1e-3 && std::abs(hi - kPi / 3) <= 1e-3,
                   "theta(1e-4) = " + num(lo) + ", theta(20) = " + num(hi)};
  });

  criterion(5, 300, [] {
    SearchConfig c;
    c.ell_min = ell_g(2);
    c.restarts = 50;
    c.seed = 0;
    const SearchResult at_l2 = estimate_Vl(c);
    const bool near = at_l2.feasible && std::abs(at_l2.best_volume - 3.226) <= 1e-3;
    const bool local = perturbation_check(build_regular_config(kPi / 6), ell_g(2), 500, 0.01, 0);
    c.ell_min = 0.05;
    const SearchResult small = estimate_Vl(c);
    const bool small_ok = small.feasible && small.best_volume >= 3.5 && small.best_volume <= v8() + 1e-6;
    return Outcome{near && local && small_ok,
                   "V(ell_2) ~ " + num(at_l2.best_volume) + ", perturbation " + (local ? "ok" : "failed") +
                       ", V(0.05) ~ " + num(small.best_volume)};
  });

  criterion(6, 5, [] {
    const auto tri = fixture("m2");
    const MgDetection mg = detect_Mg(tri);
    const MarkedCycle z = alternated_fundamental_cycle(tri);
    const auto deg = local_degrees(tri, z);
    const bool degrees = std::all_of(deg.begin(), deg.end(), [](const Rational& r) { return r == Rational(1); });
    ManifoldDescriptor d;
    d.kind = ManifoldKind::Mg;
    d.g = mg.g;
    const BoundReport r = isv_bounds(d);
    const bool ok = mg.is_Mg && mg.g == 2 && z.l1_norm() == Rational(2) && verify_marked_cycle(tri, z) &&
                    degrees && r.exact && *r.exact == 2.0;
    return Outcome{ok, "norm " + z.l1_norm().to_string() + ", isv " + (r.exact ? num(*r.exact) : "none")};
  });

  criterion(7, 30, [] {
    const int h_m2 = marked_homology_ranks(fixture("m2")).rank[3];
    const int h_f8 = marked_homology_ranks(fixture("figure_eight")).rank[3];
    const int h_gk = marked_homology_ranks(fixture("gieseking")).rank[3];
    bool identity = true;
    for (const char* name : {"figure_eight", "gieseking", "m2", "m3"}) identity = identity && euler_identity(fixture(name));
    std::mt19937_64 rng(2024);
    int accepted = 0;
    while (accepted < 200) {
      const int g = 1 + static_cast<int>(rng() % 4);
      const IdealTriangulation tri(g, random_gluings(g, rng));
      const CellQuotient q = quotient_cells(tri);
      if (std::count(q.edge_reversed.begin(), q.edge_reversed.end(), true) > 0) continue;
      ++accepted;
      identity = identity && euler_identity(tri);
    }
    return Outcome{h_m2 == 1 && h_f8 == 1 && h_gk == 0 && identity,
                   "H3 = " + std::to_string(h_m2) + "/" + std::to_string(h_f8) + "/" + std::to_string(h_gk) +
                       ", Euler identity on 4 fixtures + 200 random"};
  });

  criterion(8, 10, [] {
    const DegreeBounds b = degree_bounds(6, 2);
    const DegreeBounds far = degree_bounds(40, 2);
    const double ratio = far.double_ratio / far.ideal_ratio;
    bool dominates = true;
    for (int gp : {2, 3, 4})
      for (int g = gp; g <= 30; ++g) {
        const DegreeBounds x = degree_bounds(g, gp);
        dominates = dominates && x.ideal <= x.double_ && x.ideal <= x.boundary;
        if (g > gp) dominates = dominates && x.ideal_ratio < x.double_ratio && x.ideal_ratio < x.boundary_ratio;
      }
    return Outcome{b.ideal == 3 && b.boundary == 5 && std::abs(ratio - 1.135) <= 0.01 && dominates,
                   "(6,2) -> " + std::to_string(b.ideal) + "/" + std::to_string(b.boundary) +
                       ", (40,2) double/ideal = " + num(ratio)};
  });

  criterion(9, 1, [] {
    ManifoldDescriptor d;
    d.kind = ManifoldKind::CuspedHyperbolic;
    d.volume = 2 * v3();
    const BoundReport r = isv_bounds(d);
    return Outcome{r.exact && std::abs(*r.exact - 2.0) <= 1e-6, "exact " + (r.exact ? num(*r.exact) : "none")};
  });

  return failures == 0 ? 0 : 1;
}
