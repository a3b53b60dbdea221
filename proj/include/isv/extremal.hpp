#pragma once

// Numerical estimate of V_l: the supremum of volumes of fully truncated
// tetrahedra whose six internal edges all have length >= l.

#include <array>
#include <cstdint>

#include "isv/trunc.hpp"

namespace isv {

struct SearchConfig {
  double ell_min = 0.0;
  int restarts = 50;
  std::uint64_t seed = 0;
  /// Initial weight of the quadratic edge-length penalty; 0 selects 100 v8.
  double penalty_weight = 0.0;
  /// Relative cubature tolerance for reported volumes.
  double tol = 1e-7;
  /// Uniform refinement depth of the smooth facet-flux quadrature in the
  /// search objective; the first three penalty stages use one level less.
  int quadrature_levels = 2;
  /// Nelder-Mead iterations per penalty stage (five stages, weight x10 each).
  int max_iters = 2000;
  /// Worker threads for independent restarts; 0 uses hardware concurrency.
  int threads = 0;
};

struct SearchResult {
  double best_volume = 0.0;
  TruncTetConfig best_config;
  int restart_index = -1;
  bool feasible = false;
  /// True when ell_min <= ell_2, where the regular tetrahedron is the proven
  /// maximizer; otherwise the value is only a heuristic estimate.
  bool certified_range = false;
  std::array<double, 6> edge_lengths{};
};

/// Six internal edge lengths of a fully truncated configuration, in the order
/// (01, 02, 03, 12, 13, 23).
[[nodiscard]] std::array<double, 6> internal_edge_lengths(const TruncTetConfig& cfg);

/// Multistart penalized Nelder-Mead over the 12 coordinates of four
/// hyperideal Klein points. Restart r draws from seed + r; the result does
/// not depend on the thread count. Throws NoFeasiblePoint if every restart
/// ends infeasible.
[[nodiscard]] SearchResult estimate_Vl(const SearchConfig& cfg);

/// True iff no feasible random perturbation increases the volume of `c` by
/// more than 1e-6. Perturbations are uniform in the 12-ball of the given
/// radius in search coordinates, where vertex i is the vector of length
/// equal to the hyperbolic distance from the origin to its polar plane.
[[nodiscard]] bool perturbation_check(const TruncTetConfig& c, double ell_min, int n_samples,
                                      double radius, std::uint64_t seed);

}  // namespace isv
