#pragma once

#include <optional>
#include <vector>

#include "optuple/config.hpp"
#include "optuple/nested.hpp"
#include "optuple/normcalc.hpp"
#include "optuple/operators.hpp"

namespace optuple {

/// Best-approximation result for min_z || T - z S ||.
struct DistanceResult {
  double value = 0.0;
  DiagonalAction minimizer_z;
  NormResult inner_norm;  // norm result of the residual at the minimizer
  /// Worst midpoint-convexity violation observed among the sampled points of
  /// the search path (>= 0; should stay within twice the norm tolerance).
  double convexity_gap = 0.0;
  long evaluations = 0;
};

/// Weighted extreme norming functionals certifying a best approximation:
/// sum t_i = 1, each f_i x_i norms the residual, and sum t_i f_i(. S x_i)
/// annihilates every diagonal direction.
struct SingerCertificate {
  struct Entry {
    Vector x;           // extreme point of the domain ball
    TupleFunctional f;  // extreme point of the dual ball of the joint codomain
    double t = 0.0;     // weight in (0, 1]
  };
  std::vector<Entry> entries;
  int h = 0;
  double residual_value = 0.0;      // ||T - z S|| being certified
  double worst_norming_slack = 0.0; // max (value - Re f((T - zS) x))
  double worst_annihilation = 0.0;  // max_j |sum_i t_i f_{ij}(S_j x_i)|
};

struct BJDecision {
  bool orthogonal = false;
  double margin = 0.0;  // dist - ||T||, signed
  std::optional<SingerCertificate> certificate;
  DistanceResult distance;
  NormResult norm;
};

/// min over scalars z of ||T - z S||. Real scalars use bracketed golden
/// section inside |z| <= 2||T||/||S||; complex scalars run the same pattern
/// search as the diagonal case on (Re z, Im z).
DistanceResult distance_to_line(const Operator& T, const Operator& S,
                                const SolveConfig& cfg = {});

/// min over z in F^d of ||T - (z_1 S_1, ..., z_d S_d)||. For outer_p = inf
/// the component line distances give the value exactly; otherwise a convex
/// pattern search (compass step with contraction, multi-restart) runs inside
/// the per-coordinate boxes |z_j| <= 2||T||/||S_j||.
DistanceResult distance_to_diagonal_subspace(const OperatorTuple& T,
                                             const OperatorTuple& S,
                                             const SolveConfig& cfg = {});

/// T perp_B F^d S iff dist(T, F^d S) >= ||T|| - tol_bj. When orthogonal, a
/// Singer certificate is attempted at z = 0.
BJDecision bj_orthogonal(const OperatorTuple& T, const OperatorTuple& S,
                         const SolveConfig& cfg = {});

/// Builds a certificate for the claim that z is a best approximation.
/// Candidate pairs come from the attainment set of the residual (pushed to
/// extreme points of the domain ball) crossed with the extreme norming
/// functionals of each image; the weights solve a small linear program whose
/// basic solutions automatically satisfy h <= d+1 (real) / 2d+1 (complex).
/// Throws CertificateNotFound (with the best feasibility residual) when the
/// candidate set admits no feasible weights.
SingerCertificate build_singer_certificate(const OperatorTuple& T, const OperatorTuple& S,
                                           const DiagonalAction& z,
                                           const SolveConfig& cfg = {});

/// Re-checks a certificate against its invariants; returns the worst slack.
double certificate_max_violation(const SingerCertificate& cert, const OperatorTuple& T,
                                 const OperatorTuple& S, const DiagonalAction& z,
                                 const SolveConfig& cfg = {});

/// max { |f(x)| : x in the unit sphere of `domain`, g(x) = 0 }. f and g live
/// in the dual space. Exact for p = 2 (orthogonal projection); otherwise a
/// multi-start search over a kernel parametrization. g = 0 returns ||f||.
double restricted_functional_norm(const Vector& f, const Vector& g, const LpSpace& domain,
                                  const SolveConfig& cfg = {});

/// Tuples of rank-one (functional) operators with outer_p = inf:
/// dist(T, F^d S) = max_i || f_i restricted to ker g_i ||.
double kernel_distance_functional_tuple(const OperatorTuple& T, const OperatorTuple& S,
                                        const SolveConfig& cfg = {});

/// Vector-level best approximation min_z || u - z v ||_p with its minimizer.
struct VectorDistance {
  double value = 0.0;
  cx z = 0.0;
};
VectorDistance vector_distance_to_line(const Vector& u, const Vector& v);

}  // namespace optuple
