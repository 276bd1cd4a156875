#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qaoakit/angles.hpp"
#include "qaoakit/graph.hpp"
#include "qaoakit/simulate.hpp"

namespace qaoakit {

struct OptConfig {
  /// Local ascents per depth; 0 selects the default schedule 50/100/1000 for
  /// p = 1/2/3 (explicit counts required for p > 3).
  int restarts = 0;
  std::uint64_t seed = 0;
  int max_iterations = 500;
  double gradient_tolerance = 1e-8;
  /// Seeding box: gamma_l in [-gamma_box, gamma_box], beta_l in
  /// [-beta_box, beta_box].
  double gamma_box = 3.14159265358979323846;
  double beta_box = 3.14159265358979323846 / 4.0;
};

int default_restarts(int p);

struct AscentResult {
  AngleVector angles;  // radians
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Quasi-Newton ascent (BFGS inverse-Hessian update, Armijo backtracking
/// line search with contraction 0.5 and slope factor 1e-4) on the analytic
/// gradient. Monotone in the objective; a non-convergent run returns the
/// best iterate flagged converged = false.
AscentResult local_ascent(StatevectorSimulator& sim, const AngleVector& start,
                          int max_iterations = 500, double gradient_tolerance = 1e-8);
AscentResult local_ascent(const Graph& g, const AngleVector& start,
                          int max_iterations = 500, double gradient_tolerance = 1e-8);

struct OptResult {
  AngleVector best_angles;  // pi-units
  double best_value = 0.0;
  int n_restarts_used = 0;
  bool all_converged = true;
  std::optional<std::vector<std::pair<AngleVector, double>>> all_local_optima;
};

/// Best of cfg.restarts seeded ascents. Start points come from a
/// counter-based stream keyed by (seed, certificate, p, restart index), so
/// the result is independent of thread scheduling. For p >= 2 the depth-(p-1)
/// optimum padded with (0, 0) is always included as one extra restart, which
/// makes best_value non-decreasing in p. `extra_seeds` prepends additional
/// start points; `include_depth_padding = false` skips the recursive
/// depth-(p-1) run for callers that supply the padded seed themselves.
OptResult multistart_optimize(const Graph& g, int p, const OptConfig& cfg,
                              unsigned threads = 1, bool collect_local_optima = false,
                              const std::vector<AngleVector>& extra_seeds = {},
                              bool include_depth_padding = true);

/// Ascent from every point of a sector-covering grid (grid_per_gamma x
/// grid_per_beta per layer), keeping stationary points within value_tol of
/// the global best and merging results closer than merge_tol (max-norm,
/// radians, toroidal). Returns box-reduced angle sets sorted
/// lexicographically.
std::vector<AngleVector> enumerate_degenerate_optima(const Graph& g, int p,
                                                     int grid_per_gamma = 24,
                                                     int grid_per_beta = 12,
                                                     double value_tol = 1e-6,
                                                     double merge_tol = 1e-3,
                                                     unsigned threads = 1);

}  // namespace qaoakit
