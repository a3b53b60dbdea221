#include "isv/extremal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include <Eigen/Core>

#include "isv/error.hpp"
#include "isv/specfun.hpp"
#include "random.hpp"
#include "trunc_detail.hpp"

namespace isv {

namespace {

using Vec12 = Eigen::Matrix<double, 12, 1>;

constexpr double kBarrier = 1e3;
// Polar plane distances allowed in the search chart (coth(9) - 1 = 3e-8).
constexpr double kMinPlaneDistance = 1e-6;
constexpr double kMaxPlaneDistance = 9.0;
constexpr double kFeasibilitySlack = 1e-6;
constexpr double kReportTol = 1e-7;
constexpr int kPenaltyStages = 5;
// Stages before this one use one quadrature level less than requested.
constexpr int kFineStage = 3;

constexpr std::array<std::array<int, 2>, 6> kEdges{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Search chart: vertex i is encoded by y_i in R^3 with |y_i| the hyperbolic
// distance from the origin to its polar plane, so p_i = coth|y_i| y_i / |y_i|.
// Every chart point is hyperideal and step sizes are hyperbolic.
Vec12 pack(const TruncTetConfig& c) {
  Vec12 x;
  for (int i = 0; i < 4; ++i) {
    const Vec3& p = c.v[i].point();
    const double r = p.norm();
    x.segment<3>(3 * i) = std::atanh(1.0 / r) / r * p;
  }
  return x;
}

std::optional<TruncTetConfig> unpack(const Vec12& x) {
  TruncTetConfig c;
  for (int i = 0; i < 4; ++i) {
    const Vec3 y = x.segment<3>(3 * i);
    const double d = y.norm();
    if (!(d > kMinPlaneDistance) || !(d < kMaxPlaneDistance)) return std::nullopt;
    c.v[i] = KleinPoint(y / (d * std::tanh(d)));
  }
  return c;
}

// Minkowski products of the normalized lifts, edge order as kEdges.
std::array<double, 6> lift_products(const TruncTetConfig& c) {
  std::array<double, 6> d{};
  for (int e = 0; e < 6; ++e) {
    d[e] = mink_dot(lift(c.v[kEdges[e][0]]), lift(c.v[kEdges[e][1]]));
  }
  return d;
}

class Objective {
 public:
  Objective(double ell_min, double weight, int levels)
      : ell_min_(ell_min), weight_(weight), levels_(levels) {}

  void set_weight(double w) { weight_ = w; }
  void set_levels(int levels) { levels_ = levels; }

  // Minimized: -volume + weight * sum max(0, ell_min - L)^2, with a barrier
  // value above kBarrier for inadmissible points.
  double operator()(const Vec12& x) const {
    double outside = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double d = x.segment<3>(3 * i).norm();
      outside += std::max(0.0, kMinPlaneDistance - d) + std::max(0.0, d - kMaxPlaneDistance);
    }
    if (outside > 0.0) return kBarrier * (2.0 + outside);
    const auto cfg = unpack(x);
    if (!cfg) return kBarrier * 2.0;

    const auto d = lift_products(*cfg);
    double violation = 0.0;
    for (double v : d) violation += std::max(0.0, v + 1.0 + 1e-12);
    if (violation > 0.0) return kBarrier * (1.0 + violation);

    double penalty = 0.0;
    for (double v : d) {
      const double gap = ell_min_ - std::acosh(-v);
      if (gap > 0.0) penalty += gap * gap;
    }
    try {
      const auto poly = truncation_polytope(*cfg);
      return -detail::flux_volume_uniform(poly, levels_).value + weight_ * penalty;
    } catch (const Error&) {
      return kBarrier;
    }
  }

 private:
  double ell_min_;
  double weight_;
  int levels_;
};

struct Simplex {
  std::vector<Vec12> x;
  std::vector<double> f;
};

// Nelder-Mead with dimension-adapted coefficients. Returns the best vertex
// and its value; `iters` is decremented by the iterations used.
std::pair<Vec12, double> nelder_mead(const Objective& obj, const Vec12& start, double step,
                                     int& iters) {
  constexpr int n = 12;
  const double alpha = 1.0;
  const double gamma = 1.0 + 2.0 / n;
  const double rho = 0.75 - 0.5 / n;
  const double sigma = 1.0 - 1.0 / n;

  Simplex s;
  s.x.push_back(start);
  for (int i = 0; i < n; ++i) {
    Vec12 v = start;
    v[i] += step;
    s.x.push_back(v);
  }
  for (const auto& v : s.x) s.f.push_back(obj(v));

  std::vector<int> idx(n + 1);
  while (iters > 0) {
    --iters;
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return s.f[a] < s.f[b]; });
    const int best = idx.front(), worst = idx.back(), second = idx[n - 1];

    double diameter = 0.0;
    for (int i = 0; i <= n; ++i) diameter = std::max(diameter, (s.x[i] - s.x[best]).norm());
    if (diameter < 1e-9 || std::abs(s.f[worst] - s.f[best]) < 1e-13) break;

    Vec12 centroid = Vec12::Zero();
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += s.x[i];
    }
    centroid /= n;

    const Vec12 xr = centroid + alpha * (centroid - s.x[worst]);
    const double fr = obj(xr);
    if (fr < s.f[best]) {
      const Vec12 xe = centroid + gamma * (xr - centroid);
      const double fe = obj(xe);
      if (fe < fr) {
        s.x[worst] = xe;
        s.f[worst] = fe;
      } else {
        s.x[worst] = xr;
        s.f[worst] = fr;
      }
      continue;
    }
    if (fr < s.f[second]) {
      s.x[worst] = xr;
      s.f[worst] = fr;
      continue;
    }
    const bool outside = fr < s.f[worst];
    const Vec12 xc = outside ? Vec12(centroid + rho * (xr - centroid))
                             : Vec12(centroid + rho * (s.x[worst] - centroid));
    const double fc = obj(xc);
    if (fc < (outside ? fr : s.f[worst])) {
      s.x[worst] = xc;
      s.f[worst] = fc;
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      s.x[i] = s.x[best] + sigma * (s.x[i] - s.x[best]);
      s.f[i] = obj(s.x[i]);
    }
  }
  const auto it = std::min_element(s.f.begin(), s.f.end());
  const auto k = static_cast<std::size_t>(it - s.f.begin());
  return {s.x[k], *it};
}

bool admissible(const TruncTetConfig& c) {
  if (!validate(c).valid()) return false;
  const auto d = lift_products(c);
  return std::all_of(d.begin(), d.end(), [](double v) { return v < -1.0; });
}

double min_edge(const TruncTetConfig& c) {
  const auto l = internal_edge_lengths(c);
  return *std::min_element(l.begin(), l.end());
}

// Moves every vertex radially toward the sphere, r -> 1 + s (r - 1). This
// pushes the truncation planes outward and lengthens every internal edge.
TruncTetConfig pull_toward_sphere(const TruncTetConfig& c, double s) {
  TruncTetConfig out;
  for (int i = 0; i < 4; ++i) {
    const Vec3& p = c.v[i].point();
    const double r = p.norm();
    out.v[i] = KleinPoint(p * ((1.0 + s * (r - 1.0)) / r));
  }
  return out;
}

bool feasible_for(const TruncTetConfig& c, double ell_min) {
  return admissible(c) && min_edge(c) >= ell_min - kFeasibilitySlack;
}

// Smallest pull toward the sphere that makes a nearly feasible point feasible.
std::optional<TruncTetConfig> restore_feasibility(const TruncTetConfig& c, double ell_min) {
  if (!admissible(c)) return std::nullopt;
  if (min_edge(c) >= ell_min) return c;
  auto ok = [&](double s) {
    try {
      const auto t = pull_toward_sphere(c, s);
      return admissible(t) && min_edge(t) >= ell_min;
    } catch (const Error&) {
      return false;
    }
  };
  double hi = 1.0;
  double lo = 0.5;
  while (!ok(lo)) {
    hi = lo;
    lo *= 0.5;
    if (lo < 1e-12) return std::nullopt;
  }
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return pull_toward_sphere(c, lo);
}

TruncTetConfig random_start(detail::Rng& rng, double ell_min) {
  for (;;) {
    TruncTetConfig c;
    for (int i = 0; i < 4; ++i) {
      Vec3 dir(rng.normal(), rng.normal(), rng.normal());
      dir.normalize();
      c.v[i] = KleinPoint(rng.uniform(1.1, 3.0) * dir);
    }
    // Degenerate directions are redrawn; otherwise pull toward the sphere
    // until valid and feasible.
    if (std::abs(c.affine_determinant()) < 1e-3) continue;
    for (int k = 0; k < 60 && !(admissible(c) && min_edge(c) >= ell_min); ++k) {
      c = pull_toward_sphere(c, 0.8);
    }
    if (admissible(c) && min_edge(c) >= ell_min) return c;
  }
}

struct RestartOutcome {
  TruncTetConfig config;
  double volume = 0.0;
  bool feasible = false;
};

RestartOutcome run_restart(const SearchConfig& cfg, double weight0, int r) {
  detail::Rng rng(cfg.seed + static_cast<std::uint64_t>(r));
  const TruncTetConfig start = random_start(rng, cfg.ell_min);

  Objective obj(cfg.ell_min, weight0, cfg.quadrature_levels);
  Vec12 x = pack(start);
  double weight = weight0;
  for (int stage = 0; stage < kPenaltyStages; ++stage) {
    obj.set_weight(weight);
    obj.set_levels(stage < kFineStage ? std::max(1, cfg.quadrature_levels - 1) : cfg.quadrature_levels);
    int budget = cfg.max_iters;
    const double step = stage == 0 ? 0.05 : 0.01;
    // Fresh simplices around the incumbent until the stage budget is spent
    // or a restart makes no progress.
    while (budget > 0) {
      const int before = budget;
      x = nelder_mead(obj, x, step, budget).first;
      if (before - budget < 13) break;
    }
    weight *= 10.0;
  }

  RestartOutcome out;
  const auto cfg_x = unpack(x);
  if (!cfg_x) return out;
  const auto repaired = restore_feasibility(*cfg_x, cfg.ell_min);
  if (!repaired || !feasible_for(*repaired, cfg.ell_min)) return out;
  try {
    out.volume = volume(truncation_polytope(*repaired), cfg.tol);
  } catch (const Error&) {
    return out;
  }
  out.config = *repaired;
  out.feasible = true;
  return out;
}

}  // namespace

std::array<double, 6> internal_edge_lengths(const TruncTetConfig& cfg) {
  std::array<double, 6> out{};
  for (int e = 0; e < 6; ++e) out[e] = edge_length(cfg.v[kEdges[e][0]], cfg.v[kEdges[e][1]]);
  return out;
}

SearchResult estimate_Vl(const SearchConfig& cfg) {
  if (!(cfg.ell_min > 0.0)) throw Error(ErrorCode::InvalidArgument, "ell_min must be positive");
  if (cfg.restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be >= 1");
  if (cfg.penalty_weight < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "penalty_weight must be positive");
  }
  const double weight0 = cfg.penalty_weight > 0.0 ? cfg.penalty_weight : 100.0 * v8();

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  int threads = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, cfg.restarts);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < cfg.restarts; r = next++) {
      outcomes[static_cast<std::size_t>(r)] = run_restart(cfg, weight0, r);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  SearchResult result;
  result.certified_range = cfg.ell_min <= ell_g(2) + 1e-9;
  for (int r = 0; r < cfg.restarts; ++r) {
    const auto& o = outcomes[static_cast<std::size_t>(r)];
    if (!o.feasible) continue;
    if (result.restart_index < 0 || o.volume > result.best_volume) {
      result.best_volume = o.volume;
      result.best_config = o.config;
      result.restart_index = r;
    }
  }
  if (result.restart_index < 0) {
    throw Error(ErrorCode::NoFeasiblePoint, "every restart ended infeasible");
  }
  result.feasible = true;
  result.edge_lengths = internal_edge_lengths(result.best_config);
  return result;
}

bool perturbation_check(const TruncTetConfig& c, double ell_min, int n_samples, double radius,
                        std::uint64_t seed) {
  if (n_samples <= 0) return true;
  const double base = volume(truncation_polytope(c), kReportTol);
  detail::Rng rng(seed);
  const Vec12 x0 = pack(c);
  for (int k = 0; k < n_samples; ++k) {
    Vec12 dir;
    for (int i = 0; i < 12; ++i) dir[i] = rng.normal();
    // Uniform in the 12-ball: radius scales as u^(1/12).
    const double rad = radius * std::pow(rng.uniform(), 1.0 / 12.0);
    const Vec12 x = x0 + rad * dir.normalized();
    const auto trial = unpack(x);
    if (!trial || !admissible(*trial) || min_edge(*trial) < ell_min) continue;
    double v;
    try {
      v = volume(truncation_polytope(*trial), kReportTol);
    } catch (const Error&) {
      continue;
    }
    if (v > base + 1e-6) return false;
  }
  return true;
}

}  // namespace isv
