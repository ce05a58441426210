#pragma once

#include <optional>
#include <string>
#include <vector>

#include "optuple/approx.hpp"
#include "optuple/normcalc.hpp"

namespace optuple {

enum class RhoMethod { difference_quotient, attainment_formula, component_formula };

std::string to_string(RhoMethod m);

/// One-sided derivatives of t -> ||T + t S|| at t = 0.
///
/// The quotient trace holds (t, quotient) pairs for t = +-1e-1 .. +-1e-6,
/// reconciled to the convex model: the raw quotients are monotone up to norm
/// solver noise, so the positive side carries a running minimum and the
/// negative side a running maximum. rho_plus is the reconciled quotient at
/// t = 1e-6 with error bound q(1e-5) - q(1e-6).
struct GateauxPair {
  double rho_minus = 0.0;
  double rho_plus = 0.0;
  RhoMethod method = RhoMethod::difference_quotient;
  std::vector<std::pair<double, double>> quotient_trace;
  double error_bound = 0.0;
  /// Disagreement against the attainment-orbit formula, when cross-checked
  /// (> 1e-4 flags incomplete attainment recovery; the quotients win).
  double cross_check_disagreement = 0.0;
  bool cross_checked = false;
  std::vector<int> participants;  // components used by the component formula
};

struct SmoothnessReport {
  bool smooth = false;
  int attainment_orbits = 0;
  std::optional<Vector> witness;
  std::optional<bool> codomain_point_smooth;
  std::string caveat;  // attainment-search completeness is heuristic
};

/// rho_+/-(T, S) by difference quotients of the tuple norm, cross-checked
/// against max/min of the image-level derivatives over the attainment orbits.
GateauxPair rho_operator(const OperatorTuple& T, const OperatorTuple& S,
                         const SolveConfig& cfg = {});

/// outer_p = inf: rho_+ = max, rho_- = min of the component derivatives over
/// the components whose norm ties the tuple norm (within tol_tie).
GateauxPair rho_tuple_infty_formula(const OperatorTuple& T, const OperatorTuple& S,
                                    const SolveConfig& cfg = {});

/// Weighted component bounds bracketing the tuple derivatives under joint
/// norm attainment, outer_p < inf:
///   sum w_i rho_-(T_i,S_i) <= rho_-(T,S) <= rho_+(T,S) <= sum w_i rho_+(T_i,S_i),
/// with w_i = (||T_i||/||T||)^(p-1) (all 1 for p = 1). The weights come out
/// of the Holder equality satisfied by every extreme norming functional at a
/// joint maximizer; dropping them breaks the bracket already for S = T.
struct SandwichBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool hypothesis_ok = false;      // joint attainment of the T_i
  double hypothesis_margin = 0.0;  // scaled margin of the joint-attainment search
  std::vector<double> weights;
  std::vector<GateauxPair> component_pairs;
};

SandwichBounds rho_sandwich_bounds(const OperatorTuple& T, const OperatorTuple& S,
                                   const SolveConfig& cfg = {});

/// Smooth iff the attainment set is a single phase orbit whose image is a
/// smooth point of the joint codomain norm.
SmoothnessReport smoothness_of_operator(const OperatorTuple& T, const SolveConfig& cfg = {});
SmoothnessReport smoothness_of_operator(const Operator& T, const SolveConfig& cfg = {});

struct SmoothnessSufficiencyReport {
  std::vector<bool> component_smooth;
  bool all_components_smooth = false;
  SmoothnessReport tuple;
  /// all components smooth => tuple smooth (vacuously true otherwise)
  bool implication_holds = true;
  /// tuple smooth with some non-smooth component: the converse fails
  bool converse_failure_observed = false;
};

/// Requires joint attainment (throws HypothesisNotSatisfied otherwise).
SmoothnessSufficiencyReport check_smoothness_sufficiency(const OperatorTuple& T,
                                                         const SolveConfig& cfg = {});

}  // namespace optuple
