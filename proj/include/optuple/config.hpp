#pragma once

#include <cstdint>

namespace optuple {

/// Knobs shared by the solvers and checkers. All tolerances are defaults; the
/// CLI exposes --tol/--seed/--starts to override the common ones.
struct SolveConfig {
  std::uint64_t seed = 0x5eed0117ull;

  /// Random starts for multi-start searches (canonical starts come on top;
  /// scaled up with dimension inside the engines).
  int starts = 64;
  /// Reduced start count for norm evaluations inside distance searches; the
  /// final minimizer is always re-evaluated at full `starts`.
  int inner_starts = 16;
  int max_iterations = 300;

  double tol_norm = 1e-7;     // norm certificate slack
  double tol_attain = 1e-7;   // membership slack for attainment sets
  double tol_dual = 1e-9;     // norming-functional normalization checks
  double tol_cluster = 1e-7;  // relative tie width for argmax coordinates in l_inf
  double sep_orbit = 1e-4;    // phase orbits closer than this are merged
  double tol_bj = 1e-6;       // orthogonality margin
  double tol_cert = 1e-6;     // certificate norming/annihilation slack
  double tol_tie = 1e-7;      // ||T_i|| = ||T|| membership in the p=inf formulas

  /// Run independent multi-starts through OpenMP. Results are merged in a
  /// fixed order, so this never changes returned values for a given seed.
  bool parallel = true;

  /// Closed-form norm routes (p=1 columns, codomain-inf rows, 2->2 spectral,
  /// outer-inf component max). Disable to force the iterative path.
  bool fast_norm_paths = true;
  /// Component-wise distance decompositions for outer_p = inf. Disable to
  /// force the generic pattern search (used by the theorem cross-checks).
  bool fast_distance_paths = true;

  int max_witnesses = 12;

  SolveConfig inner() const {
    SolveConfig c = *this;
    c.starts = inner_starts;
    return c;
  }
};

}  // namespace optuple
