#pragma once

#include <vector>

#include "optuple/duality.hpp"
#include "optuple/space.hpp"

namespace optuple {

/// Functional on a direct sum l_P^d(Y_i): components f_i in Y_i^*, acting as
/// f(w) = sum_i f_i(w_i). The dual norm is the outer-conjugate l_q norm of the
/// component dual norms.
struct TupleFunctional {
  std::vector<Vector> comps;

  cx operator()(const std::vector<Vector>& values) const;
};

/// Dual norm ||f||_q with q the conjugate of outer_p.
double tuple_functional_norm(const TupleFunctional& f, const Exponent& outer_p);

/// A norming functional for w in the direct sum: f(w) = ||w||, ||f|| = 1.
/// At nonsmooth points this picks the canonical subgradient (zero off-support
/// for outer p=1, lowest-index argmax component for outer p=inf).
TupleFunctional nested_duality_primary(const std::vector<Vector>& values,
                                       const Exponent& outer_p,
                                       double tol_cluster = 1e-7);

/// Subgradient candidates at w, primary first. At smooth points this is a
/// single element; at nonsmooth points the extreme choices are enumerated up
/// to `cap` (excess candidates fall back to the primary).
std::vector<TupleFunctional> nested_duality_candidates(const std::vector<Vector>& values,
                                                       const Exponent& outer_p,
                                                       int cap,
                                                       double tol_cluster = 1e-7);

/// Extreme points of J(w) in the direct-sum dual, enumerated up to `cap`
/// (complex free phases are sampled, as in NormingFunctionalSet).
std::vector<TupleFunctional> nested_duality_extremes(const std::vector<Vector>& values,
                                                     const Exponent& outer_p,
                                                     int cap,
                                                     double tol_cluster = 1e-7);

/// One-sided derivatives of the joint norm at w in direction v:
/// sup/inf of Re f(v) over extreme norming functionals, in closed form.
RhoPair nested_rho(const std::vector<Vector>& values, const std::vector<Vector>& dirs,
                   const Exponent& outer_p, double tol_cluster = 1e-7);

/// True iff J(w) is a singleton in the direct-sum dual.
bool nested_smooth(const std::vector<Vector>& values, const Exponent& outer_p,
                   double tol_cluster = 1e-7);

/// Extreme-point test for a unit functional in the direct-sum dual
/// (outer exponent q = conjugate of outer_p of the primal sum).
bool nested_is_extreme_dual(const TupleFunctional& f, const Exponent& dual_outer,
                            double tol = 1e-9);

}  // namespace optuple
