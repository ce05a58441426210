// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "optuple/io.hpp"
#include "optuple/theorems.hpp"
#include "oracles.hpp"

using namespace optuple;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Criterion {
  const char* name;
  bool pass = true;
  int checked = 0;
  double worst = 0.0;
  std::string detail;

  void require(bool ok, double gap = 0.0) {
    ++checked;
    worst = std::max(worst, gap);
    if (!ok) pass = false;
  }
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

SolveConfig acceptance_config() {
  SolveConfig cfg;
  cfg.starts = 24;
  cfg.inner_starts = 10;
  return cfg;
}

// Instances that decided B-J orthogonal along the way feed criterion 8.
struct OrthogonalCase {
  OperatorTuple T;
  OperatorTuple S;
};
std::vector<OrthogonalCase> g_orthogonal;

// --- criterion 1: the golden pair ------------------------------------------

Criterion criterion_golden() {
  Criterion c{"1 golden counterexample"};
  const double t0 = now_seconds();
  const SolveConfig cfg = acceptance_config();
  const Instance g = golden_counterexample();
  const double root5_half = std::sqrt(5.0) / 2.0;

  const NormResult tn = tuple_norm(g.T, cfg);
  c.require(std::abs(tn.value - root5_half) <= 1e-6, std::abs(tn.value - root5_half));

  const DistanceResult dd = distance_to_diagonal_subspace(g.T, g.S, cfg);
  c.require(std::abs(dd.value - root5_half) <= 1e-6, std::abs(dd.value - root5_half));

  for (int i = 0; i < 2; ++i) {
    const DistanceResult di = distance_to_line(g.T.component(i), g.S.component(i), cfg);
    c.require(std::abs(di.value * di.value - 0.625) <= 1e-6,
              std::abs(di.value * di.value - 0.625));
    c.require(std::abs(di.minimizer_z.z[0].real() + 0.5) <= 1e-5,
              std::abs(di.minimizer_z.z[0].real() + 0.5));

    const AttainmentSet att = attainment_set(g.T.component(i), cfg);
    Vector expect = Vector::zeros(g.T.domain());
    expect[i == 0 ? 1 : 0] = 1.0;
    c.require(att.representatives.size() == 1 &&
              orbit_distance(att.representatives.front(), expect) <= 1e-6);
  }
  c.require(!joint_attainment_check(g.T, cfg).nonempty);

  const double elapsed = now_seconds() - t0;
  c.require(elapsed < 5.0, elapsed);
  c.detail = "runtime " + std::to_string(elapsed) + "s";
  g_orthogonal.push_back({g.T, g.S});
  return c;
}

// --- criterion 2: p = inf max-distance theorem ------------------------------

Criterion criterion_max_infty() {
  Criterion c{"2 outer-inf distance = component max (200 random)"};
  const double t0 = now_seconds();
  SolveConfig cfg = acceptance_config();
  const double doms[] = {1.0, 2.0, 3.0, kInf};
  for (int k = 0; k < 200; ++k) {
    const int dim = 2 + k % 3;  // 2..4
    const int d = 1 + k % 3;
    const Instance inst = gen_random_infty(dim, d, 20000 + k,
                                           Exponent::from_value(doms[k % 4]));
    SolveConfig generic = cfg;
    generic.fast_distance_paths = false;
    const double slow = distance_to_diagonal_subspace(inst.T, inst.S, generic).value;
    double formula = 0.0;
    for (int i = 0; i < d; ++i)
      formula = std::max(formula,
                         distance_to_line(inst.T.component(i), inst.S.component(i), cfg).value);
    c.require(std::abs(slow - formula) <= 1e-5, std::abs(slow - formula));

    const double margin = slow - tuple_norm(inst.T, cfg).value;
    if (margin >= -cfg.tol_bj) g_orthogonal.push_back({inst.T, inst.S});
  }
  const double elapsed = now_seconds() - t0;
  c.require(elapsed < 120.0, elapsed);
  c.detail = "worst gap " + std::to_string(c.worst) + ", runtime " +
             std::to_string(elapsed) + "s";
  return c;
}

// --- criterion 3: sum-distance theorem on the generated families -------------

Criterion criterion_sum_distance() {
  Criterion c{"3 sum-distance theorem (100 generated)"};
  const SolveConfig cfg = acceptance_config();
  const double outers[] = {1.0, 2.0, 3.0};
  for (int k = 0; k < 100; ++k) {
    const Exponent outer = Exponent::from_value(outers[k % 3]);
    const bool family_a = k < 50;
    const Instance inst =
        family_a ? gen_example_a(2 + k % 3, 1 + k % 3, 30000 + k, outer)
                 : gen_example_b(2 + k % 3, 1 + k % 3, 30000 + k, outer,
                                 2.0 + (k % 4) * 0.5);
    const double p = outer.value();
    const DistanceResult dd = distance_to_diagonal_subspace(inst.T, inst.S, cfg);
    const OperatorTuple residual = affine_tuple(inst.T, inst.S, dd.minimizer_z);

    double sum_p = 0.0;
    double comp_gap = 0.0;
    for (int i = 0; i < inst.T.size(); ++i) {
      const double di =
          distance_to_line(inst.T.component(i), inst.S.component(i), cfg).value;
      sum_p += std::pow(di, p);
      comp_gap = std::max(
          comp_gap, std::abs(di - operator_norm(residual.component(i), cfg).value));
    }
    const double gap = std::abs(std::pow(dd.value, p) - sum_p);
    c.require(gap <= 1e-5 * inst.T.size(), gap);
    c.require(comp_gap <= 1e-5, comp_gap);
    if (!family_a)
      c.require(std::abs(std::pow(dd.value, p) - inst.T.size()) <= 1e-6,
                std::abs(std::pow(dd.value, p) - inst.T.size()));
    if (family_a) g_orthogonal.push_back({inst.T, inst.S});
  }
  c.detail = "worst gap " + std::to_string(c.worst);
  return c;
}

// --- criterion 4: kernel-restriction corollary -------------------------------

Criterion criterion_kernel() {
  Criterion c{"4 kernel-restriction corollary (100 functional tuples)"};
  SolveConfig cfg = acceptance_config();
  for (int k = 0; k < 100; ++k) {
    const Exponent domain_p = k % 2 ? Exponent::finite(3.0) : Exponent::finite(2.0);
    const bool equal_norms = k % 2 == 0;
    const Instance inst = gen_functional_tuple(3, 1 + k % 3, 40000 + k, domain_p, equal_norms);

    const double kernel = kernel_distance_functional_tuple(inst.T, inst.S, cfg);
    SolveConfig generic = cfg;
    generic.fast_distance_paths = false;
    const DistanceResult dd = distance_to_diagonal_subspace(inst.T, inst.S, generic);
    c.require(std::abs(kernel - dd.value) <= 1e-5, std::abs(kernel - dd.value));

    if (equal_norms) {
      // item (iii): orthogonal iff some g_i vanishes at the maximizer of f_i
      const double tuple_margin = dd.value - tuple_norm(inst.T, cfg).value;
      double min_g = kInf;
      for (int i = 0; i < inst.T.size(); ++i) {
        const Vector fi = inst.T.component(i).row(0);
        const Vector gi = inst.S.component(i).row(0);
        min_g = std::min(min_g,
                         std::abs(functional_apply(gi, norming_vector(fi))));
      }
      const bool orth = tuple_margin >= -cfg.tol_bj;
      const bool witness = min_g <= 1e-4;
      const bool boundary =
          std::abs(tuple_margin) <= 3.0 * cfg.tol_bj || (min_g > 1e-5 && min_g < 1e-3);
      c.require(orth == witness || boundary);
      if (orth) g_orthogonal.push_back({inst.T, inst.S});
    }
  }
  c.detail = "worst gap " + std::to_string(c.worst);
  return c;
}

// --- criterion 5: one-sided derivative suites --------------------------------

Criterion criterion_rho() {
  Criterion c{"5 derivative formulas and sandwich bounds"};
  SolveConfig cfg = acceptance_config();

  auto check_pair = [&](const GateauxPair& g) {
    c.require(g.rho_minus <= g.rho_plus + 1e-9, g.rho_minus - g.rho_plus);
    double prev_pos = kInf, prev_neg = -kInf;
    bool monotone = true;
    for (const auto& [t, q] : g.quotient_trace) {
      if (t > 0) {
        monotone = monotone && q <= prev_pos + 1e-9;
        prev_pos = q;
      } else {
        monotone = monotone && q >= prev_neg - 1e-9;
        prev_neg = q;
      }
    }
    c.require(monotone);
  };

  const double doms[] = {1.0, 2.0, 3.0, kInf};
  for (int k = 0; k < 200; ++k) {
    const Instance inst = gen_random_infty(2 + k % 3, 1 + k % 3, 50000 + k,
                                           Exponent::from_value(doms[k % 4]));
    const GateauxPair formula = rho_tuple_infty_formula(inst.T, inst.S, cfg);
    const GateauxPair quotient = rho_operator(inst.T, inst.S, cfg);
    check_pair(quotient);
    const double gap = std::max(std::abs(formula.rho_plus - quotient.rho_plus),
                                std::abs(formula.rho_minus - quotient.rho_minus));
    c.require(gap <= 1e-4, gap);
  }

  // sandwich bounds on joint-attainment instances, several directions each
  for (int k = 0; k < 20; ++k) {
    const Exponent outer = Exponent::from_value(k % 2 ? 3.0 : 2.0);
    const Instance inst = k % 2 ? gen_example_b(3, 2, 51000 + k, outer)
                                : gen_example_a(2 + k % 2, 2, 51000 + k, outer);
    std::vector<OperatorTuple> dirs = {inst.S, inst.T};
    std::vector<Operator> neg;
    for (const Operator& t : inst.T.components()) neg.push_back(cx(-1.0, 0.0) * t);
    dirs.emplace_back(neg, inst.T.outer_p());
    for (const OperatorTuple& S : dirs) {
      const SandwichBounds sb = rho_sandwich_bounds(inst.T, S, cfg);
      if (!sb.hypothesis_ok) continue;
      const GateauxPair g = rho_operator(inst.T, S, cfg);
      check_pair(g);
      c.require(sb.lower <= g.rho_minus + 1e-4, sb.lower - g.rho_minus);
      c.require(g.rho_plus <= sb.upper + 1e-4, g.rho_plus - sb.upper);
    }
  }
  c.detail = "worst gap " + std::to_string(c.worst);
  return c;
}

// --- criterion 6: oracle equivalence ------------------------------------------

Criterion criterion_oracle() {
  Criterion c{"6 brute-force oracle equivalence (200 random)"};
  SolveConfig cfg = acceptance_config();
  std::mt19937_64 rng(60001);
  const double ps[] = {1.0, 2.0, 3.0, kInf};
  for (int k = 0; k < 200; ++k) {
    const int dim = 2 + k % 2;
    const LpSpace dom(dim, Exponent::from_value(ps[k % 4]));
    const LpSpace cod(dim, Exponent::from_value(ps[(k / 4) % 4]));
    const Operator T = oracles::random_operator(dom, cod, rng);
    const Operator S = oracles::random_operator(dom, cod, rng);

    const double fast = operator_norm(T, cfg).value;
    const double brute = brute_force_norm(T, dim == 2 ? 360 : 240, cfg).value;
    c.require(std::abs(fast - brute) <= 1e-5, std::abs(fast - brute));

    std::vector<Operator> comps = {T, S};
    const OperatorTuple tup(comps, Exponent::finite(2.0));
    const double tfast = tuple_norm(tup, cfg).value;
    const double tbrute = brute_force_norm(tup, dim == 2 ? 360 : 240, cfg).value;
    c.require(std::abs(tfast - tbrute) <= 1e-5, std::abs(tfast - tbrute));

    const double dist = distance_to_line(T, S, cfg).value;
    const double grid = oracles::grid_distance_to_line(T, S, 81, cfg);
    c.require(std::abs(dist - grid) <= 1e-5, std::abs(dist - grid));

    if (k % 4 == 0) {
      std::vector<Operator> st = {oracles::random_operator(dom, cod, rng),
                                  oracles::random_operator(dom, cod, rng)};
      const OperatorTuple stup(st, Exponent::finite(2.0));
      const double d2 = distance_to_diagonal_subspace(tup, stup, cfg).value;
      const double g2 = oracles::grid_distance_diagonal(tup, stup, 25, cfg);
      c.require(std::abs(d2 - g2) <= 1e-5, std::abs(d2 - g2));
    }
  }
  c.detail = "worst gap " + std::to_string(c.worst);
  return c;
}

// --- criterion 7: smoothness classifications ----------------------------------

Criterion criterion_smoothness() {
  Criterion c{"7 smoothness: diagonal family and rank-one family"};
  SolveConfig cfg = acceptance_config();

  const Instance lmd = gen_lmd_example(3.0, 3);
  for (int n = 2; n <= 3; ++n) {
    const SmoothnessReport s = smoothness_of_operator(lmd.T.component(n - 1), cfg);
    c.require(!s.smooth && s.attainment_orbits > 1);
  }
  const SmoothnessReport tup = smoothness_of_operator(lmd.T, cfg);
  c.require(tup.smooth);
  c.require(tup.witness &&
            orbit_distance(*tup.witness, Vector::unit(lmd.T.domain(), 0)) <= 1e-6);

  for (int k = 0; k < 5; ++k) {
    const Instance a = gen_example_a(3, 2 + k % 2, 70000 + k, Exponent::finite(2.0),
                                     Field::real, Exponent::finite(2.0),
                                     Exponent::finite(2.0));
    bool all_smooth = true;
    for (const Operator& t : a.T.components())
      all_smooth = all_smooth && smoothness_of_operator(t, cfg).smooth;
    c.require(all_smooth);
    c.require(smoothness_of_operator(a.T, cfg).smooth);
  }
  return c;
}

// --- criterion 8: Singer certificates -----------------------------------------

Criterion criterion_certificates() {
  Criterion c{"8 Singer certificates on every orthogonal instance"};
  SolveConfig cfg = acceptance_config();
  int built = 0;
  for (const OrthogonalCase& oc : g_orthogonal) {
    SingerCertificate cert;
    try {
      cert = build_singer_certificate(oc.T, oc.S, DiagonalAction::zeros(oc.T.size()), cfg);
    } catch (const CertificateNotFound& e) {
      c.require(false, e.best_residual);
      continue;
    }
    ++built;
    c.require(cert.h <= oc.T.size() + 1);
    double tsum = 0.0;
    for (const auto& e : cert.entries) {
      tsum += e.t;
      c.require(e.t > 0.0 && e.t <= 1.0 + 1e-12);
      c.require(std::abs(tuple_functional_norm(e.f, oc.T.outer_p()) - 1.0) <= 1e-7);
      c.require(is_extreme_point(e.x, 1e-7));
    }
    c.require(std::abs(tsum - 1.0) <= 1e-9, std::abs(tsum - 1.0));
    c.require(cert.worst_norming_slack <= cfg.tol_cert * std::max(1.0, cert.residual_value),
              cert.worst_norming_slack);

    // independent re-verification of the annihilation residual
    double residual = 0.0;
    for (int j = 0; j < oc.S.size(); ++j) {
      cx sum = 0.0;
      for (const auto& e : cert.entries) {
        const Vector Sx = apply(oc.S.component(j), e.x);
        cx fs = 0.0;
        for (int r = 0; r < Sx.dim(); ++r)
          fs += e.f.comps[static_cast<size_t>(j)][r] * Sx[r];
        sum += e.t * fs;
      }
      residual = std::max(residual, std::abs(sum));
    }
    c.require(residual <= 1e-8, residual);
  }
  c.detail = std::to_string(built) + " certificates over " +
             std::to_string(g_orthogonal.size()) + " orthogonal instances";
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  results.push_back(criterion_golden());
  results.push_back(criterion_max_infty());
  results.push_back(criterion_sum_distance());
  results.push_back(criterion_kernel());
  results.push_back(criterion_rho());
  results.push_back(criterion_oracle());
  results.push_back(criterion_smoothness());
  results.push_back(criterion_certificates());

  bool all = true;
  for (const Criterion& c : results) {
    all = all && c.pass;
    std::printf("criterion %-55s %s  (%d checks%s%s)\n", c.name, c.pass ? "PASS" : "FAIL",
                c.checked, c.detail.empty() ? "" : ", ", c.detail.c_str());
  }
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
