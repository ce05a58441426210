#pragma once

#include <vector>

namespace optuple::detail {

struct FeasibilityResult {
  bool feasible = false;
  std::vector<double> t;   // solution, size = columns of A
  double residual = 0.0;   // max |A t - b| at the returned point
};

/// Phase-1 simplex for { t >= 0 : A t = b }. Basic feasible solutions have at
/// most rows(A) nonzero entries, which is the Caratheodory-style pruning the
/// certificate builder relies on. Bland's rule, dense tableau; sized for a
/// handful of rows and a few hundred columns.
FeasibilityResult equality_feasibility(const std::vector<std::vector<double>>& A,
                                       const std::vector<double>& b, double tol = 1e-11);

}  // namespace optuple::detail
