#include "optuple/derivatives.hpp"

#include <algorithm>
#include <cmath>

#include "optuple/nested.hpp"

namespace optuple {

std::string to_string(RhoMethod m) {
  switch (m) {
    case RhoMethod::difference_quotient: return "difference_quotient";
    case RhoMethod::attainment_formula: return "attainment_formula";
    case RhoMethod::component_formula: return "component_formula";
  }
  return "?";
}

namespace {

OperatorTuple shifted(const OperatorTuple& T, const OperatorTuple& S, double t) {
  DiagonalAction z = DiagonalAction::zeros(T.size());
  for (cx& v : z.z) v = cx(-t, 0.0);
  return affine_tuple(T, S, z);  // T + t S
}

RhoPair attainment_rho(const OperatorTuple& T, const OperatorTuple& S,
                       const std::vector<Vector>& reps, const SolveConfig& cfg) {
  RhoPair out{0.0, 0.0};
  bool first = true;
  for (const Vector& x : reps) {
    const RhoPair r = nested_rho(tuple_apply(T, x), tuple_apply(S, x), T.outer_p(),
                                 cfg.tol_cluster);
    out.minus = first ? r.minus : std::min(out.minus, r.minus);
    out.plus = first ? r.plus : std::max(out.plus, r.plus);
    first = false;
  }
  return out;
}

}  // namespace

GateauxPair rho_operator(const OperatorTuple& T, const OperatorTuple& S,
                         const SolveConfig& cfg) {
  if (T.is_zero()) throw ZeroOperatorError();
  if (S.size() != T.size())
    throw ShapeMismatch("rho_operator: component counts disagree");

  const NormResult base = tuple_norm(T, cfg);
  const std::vector<Vector>& warm = base.witnesses;

  GateauxPair g;
  g.method = RhoMethod::difference_quotient;

  // Quotients at t = 1e-1 .. 1e-6, both sides; convexity makes the positive
  // side non-increasing and the negative side non-decreasing as |t| shrinks,
  // so a running min/max absorbs norm-solver noise.
  double qp = std::numeric_limits<double>::infinity();
  double qm = -std::numeric_limits<double>::infinity();
  double qp_prev = 0.0, qm_prev = 0.0;
  for (int k = 1; k <= 6; ++k) {
    const double t = std::pow(10.0, -k);
    const double np = tuple_norm(shifted(T, S, t), cfg, warm).value;
    const double nm = tuple_norm(shifted(T, S, -t), cfg, warm).value;
    qp_prev = qp;
    qm_prev = qm;
    qp = std::min(qp, (np - base.value) / t);
    qm = std::max(qm, (base.value - nm) / t);
    g.quotient_trace.emplace_back(-t, qm);
    g.quotient_trace.emplace_back(t, qp);
  }
  g.rho_plus = qp;
  g.rho_minus = qm;
  g.error_bound = std::max(std::abs(qp_prev - qp), std::abs(qm_prev - qm));
  if (g.rho_minus > g.rho_plus) {
    // below solver resolution; reconcile to the convex model rho_- <= rho_+
    const double mid = 0.5 * (g.rho_minus + g.rho_plus);
    g.rho_minus = g.rho_plus = mid;
  }

  const AttainmentSet att = attainment_set_from(base, cfg);
  if (!att.representatives.empty()) {
    const RhoPair a = attainment_rho(T, S, att.representatives, cfg);
    g.cross_checked = true;
    g.cross_check_disagreement =
        std::max(std::abs(a.plus - g.rho_plus), std::abs(a.minus - g.rho_minus));
  }
  return g;
}

GateauxPair rho_tuple_infty_formula(const OperatorTuple& T, const OperatorTuple& S,
                                    const SolveConfig& cfg) {
  if (!T.outer_p().is_infinite())
    throw ShapeMismatch("rho_tuple_infty_formula requires outer_p = inf");
  if (T.is_zero()) throw ZeroOperatorError();

  std::vector<double> norms;
  double top = 0.0;
  for (const Operator& t : T.components()) {
    norms.push_back(operator_norm(t, cfg).value);
    top = std::max(top, norms.back());
  }
  const double slack = cfg.tol_tie * std::max(1.0, top);

  GateauxPair g;
  g.method = RhoMethod::component_formula;
  bool first = true;
  for (int i = 0; i < T.size(); ++i) {
    if (norms[static_cast<size_t>(i)] < top - slack) continue;
    g.participants.push_back(i);
    const GateauxPair ci = rho_operator(OperatorTuple::single(T.component(i)),
                                        OperatorTuple::single(S.component(i)), cfg);
    g.rho_minus = first ? ci.rho_minus : std::min(g.rho_minus, ci.rho_minus);
    g.rho_plus = first ? ci.rho_plus : std::max(g.rho_plus, ci.rho_plus);
    first = false;
  }
  return g;
}

SandwichBounds rho_sandwich_bounds(const OperatorTuple& T, const OperatorTuple& S,
                                   const SolveConfig& cfg) {
  if (T.outer_p().is_infinite())
    throw ShapeMismatch("rho_sandwich_bounds requires outer_p < inf");
  if (T.is_zero()) throw ZeroOperatorError();

  SandwichBounds b;
  const JointAttainment joint = joint_attainment_check(T, cfg);
  b.hypothesis_ok = joint.nonempty;
  b.hypothesis_margin = joint.margin;

  // ||T||^p = sum ||T_i||^p under the hypothesis; weights from the Holder
  // equality at a joint maximizer.
  const double pv = T.outer_p().value();
  double total_p = 0.0;
  for (double n : joint.component_norms) total_p += std::pow(n, pv);
  const double tuple_norm_lemma = std::pow(total_p, 1.0 / pv);

  for (int i = 0; i < T.size(); ++i) {
    const double ni = joint.component_norms[static_cast<size_t>(i)];
    double w = 1.0;
    if (!T.outer_p().is_one())
      w = ni == 0.0 ? 0.0 : std::pow(ni / tuple_norm_lemma, pv - 1.0);
    b.weights.push_back(w);
    GateauxPair ci = rho_operator(OperatorTuple::single(T.component(i)),
                                  OperatorTuple::single(S.component(i)), cfg);
    b.lower += w * ci.rho_minus;
    b.upper += w * ci.rho_plus;
    b.component_pairs.push_back(std::move(ci));
  }
  return b;
}

SmoothnessReport smoothness_of_operator(const OperatorTuple& T, const SolveConfig& cfg) {
  if (T.is_zero()) throw ZeroOperatorError();
  const NormResult nr = tuple_norm(T, cfg);
  const AttainmentSet att = attainment_set_from(nr, cfg);

  SmoothnessReport r;
  r.attainment_orbits = static_cast<int>(att.representatives.size());
  if (!att.complete_flag)
    r.caveat = "attainment search is heuristic; orbit count is a lower bound";
  if (r.attainment_orbits == 1) {
    r.witness = att.representatives.front();
    r.codomain_point_smooth =
        nested_smooth(tuple_apply(T, *r.witness), T.outer_p(), cfg.tol_cluster);
    r.smooth = *r.codomain_point_smooth;
  } else {
    r.smooth = false;
  }
  return r;
}

SmoothnessReport smoothness_of_operator(const Operator& T, const SolveConfig& cfg) {
  return smoothness_of_operator(OperatorTuple::single(T), cfg);
}

SmoothnessSufficiencyReport check_smoothness_sufficiency(const OperatorTuple& T,
                                                         const SolveConfig& cfg) {
  const JointAttainment joint = joint_attainment_check(T, cfg);
  if (!joint.nonempty)
    throw HypothesisNotSatisfied("check_smoothness_sufficiency: no joint maximizer found");

  SmoothnessSufficiencyReport rep;
  rep.all_components_smooth = true;
  for (const Operator& t : T.components()) {
    rep.component_smooth.push_back(smoothness_of_operator(t, cfg).smooth);
    rep.all_components_smooth = rep.all_components_smooth && rep.component_smooth.back();
  }
  rep.tuple = smoothness_of_operator(T, cfg);
  if (rep.all_components_smooth) rep.implication_holds = rep.tuple.smooth;
  rep.converse_failure_observed = rep.tuple.smooth && !rep.all_components_smooth;
  return rep;
}

}  // namespace optuple
