#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "optuple/config.hpp"
#include "optuple/multistart.hpp"
#include "optuple/operators.hpp"

namespace optuple {

enum class NormMethod { exact_p1, exact_row_dual, exact_spectral, power_iteration, brute_force };

std::string to_string(NormMethod m);

/// Result of a norm computation with its maximizer witnesses.
struct NormResult {
  double value = 0.0;
  /// Unit maximizers, phase-normalized and deduplicated by phase orbit,
  /// sorted by attained value then lexicographically.
  std::vector<Vector> witnesses;
  NormMethod method = NormMethod::power_iteration;
  /// max deviation | ||T x|| - value | over the stored witnesses.
  double residual = 0.0;
  int starts_used = 0;
  /// Starts (or enumerated candidates, for exact paths) that finished within
  /// tol_attain of the best value.
  int converged_near_best = 0;
  /// True when the witness list provably covers the whole attainment set.
  bool exhaustive = false;
};

/// Norm-attainment set recovered from the witnesses, clustered by phase orbit.
struct AttainmentSet {
  std::vector<Vector> representatives;
  /// Heuristic: exact enumeration, or every near-maximal start fell into a
  /// small number of orbits. Never used as a theorem hypothesis.
  bool complete_flag = false;
};

/// Induced operator norm ||T||_{p->q}.
///
/// Exact routes: domain p=1 (max column norm), codomain q=inf (max row dual
/// norm), p=q=2 (largest singular value). Otherwise a generalized power
/// iteration alternates duality maps of the codomain and domain from multiple
/// starts; at nonsmooth points the extreme choice maximizing the next
/// objective wins, lowest index on ties.
NormResult operator_norm(const Operator& T, const SolveConfig& cfg = {},
                         std::span<const Vector> warm_starts = {});

/// Joint tuple norm x -> ||(T_1 x, ..., T_d x)||_outer. For outer_p = inf
/// this is exactly max_i ||T_i||; other exact routes mirror operator_norm.
NormResult tuple_norm(const OperatorTuple& T, const SolveConfig& cfg = {},
                      std::span<const Vector> warm_starts = {});

AttainmentSet attainment_set(const Operator& T, const SolveConfig& cfg = {});
AttainmentSet attainment_set(const OperatorTuple& T, const SolveConfig& cfg = {});
AttainmentSet attainment_set_from(const NormResult& result, const SolveConfig& cfg);

struct JointAttainment {
  bool nonempty = false;
  /// max over unit x of min_i (||T_i x|| - ||T_i||), scaled by max(1, max ||T_i||).
  double margin = 0.0;
  Vector witness = Vector::zeros(LpSpace(1, Exponent::one()));
  std::vector<double> component_norms;
};

/// Searches for a common maximizer of all components.
JointAttainment joint_attainment_check(const OperatorTuple& T, const SolveConfig& cfg = {});

/// Dense angular grid over the domain sphere plus local ascent polish.
/// Real domains up to dimension 3, complex up to dimension 2.
NormResult brute_force_norm(const Operator& T, int grid_density = 360,
                            const SolveConfig& cfg = {});
NormResult brute_force_norm(const OperatorTuple& T, int grid_density = 360,
                            const SolveConfig& cfg = {});

/// Multi-start maximization of a scale-invariant objective over the unit
/// sphere (compass ascent with contraction). Used for attainment searches and
/// kernel-restricted norms; deterministic for a fixed seed.
struct SphereSearchResult {
  double value = 0.0;
  Vector argmax = Vector::zeros(LpSpace(1, Exponent::one()));
  std::vector<Vector> near_best;
  int starts_used = 0;
  int converged_near_best = 0;
};

SphereSearchResult sphere_maximize(const LpSpace& domain,
                                   const std::function<double(const Vector&)>& objective,
                                   const SolveConfig& cfg,
                                   std::span<const Vector> warm_starts = {});

/// Compass ascent of `objective` from x (renormalizing to the unit sphere);
/// returns the final value. Shared by the brute-force grid and the searches.
double polish_on_sphere(const std::function<double(const Vector&)>& objective, Vector& x,
                        double initial_step = 0.25, double min_step = 1e-9);

/// Fixed-point refinement of a norm maximizer: duality-map alternation until
/// the witness stops moving (orbit distance <= 1e-13) or `max_iters` is hit.
/// The multistart engine stops on a value plateau, which leaves the witness
/// at ~sqrt(value-tolerance) accuracy; certificates need the witness itself.
Vector refine_maximizer(const OperatorTuple& T, Vector x, const SolveConfig& cfg,
                        int max_iters = 200);

}  // namespace optuple
