#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "optuple/approx.hpp"
#include "optuple/derivatives.hpp"

namespace optuple {

/// A generated or loaded (T, S) pair with honest provenance metadata.
struct Instance {
  OperatorTuple T;
  OperatorTuple S;
  std::string generator;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> meta;
  /// Generator-level flag: the construction guarantees a joint maximizer.
  bool hint_joint_attainment = false;
};

struct Hypothesis {
  std::string name;
  bool satisfied = false;
  double margin = 0.0;
};

struct Conclusion {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
};

/// Executable form of one theorem on one instance. When a hypothesis fails
/// the report is vacuous; the conclusion is still evaluated and reported
/// informationally (some instances exist precisely because the conclusion
/// survives hypothesis failure).
struct CheckReport {
  std::string theorem;
  std::vector<Hypothesis> hypotheses;
  bool vacuous = false;
  Conclusion conclusion;
  std::string note;

  bool violated() const { return !vacuous && !conclusion.holds; }
};

// --- instance generators ----------------------------------------------------

/// The exact 2x2 real pair with T1 = diag(1/2, 1), T2 = diag(1, 1/2),
/// S1 = -S2 mapping (a,b) to ((a-b)/2, (a-b)/2), outer exponent 2.
Instance golden_counterexample();

/// Rank-one perturbations of a random operator A sharing the maximizer of A:
/// T_j = (1/(j+1)) A + (1 - 1/(j+1)) (A x) phi, S_j = B_j - (B_j x) phi,
/// with phi the norming functional of x. Guarantees x in every M_{T_j} and
/// S_j x = 0.
Instance gen_example_a(int dim, int d, std::uint64_t seed,
                       Exponent outer_p = Exponent::finite(2.0),
                       Field field = Field::real,
                       std::optional<Exponent> domain_p = std::nullopt,
                       std::optional<Exponent> codomain_p = std::nullopt);

/// Diagonal operators with leading coefficient 1 and |lambda_jk| < 1:
/// T_j = diag(1, l_j2, ...), S_j = diag(0, l_j2, ...) on l_m^dim. The first
/// coordinate vector maximizes every component and dist(T, F^d S)^p = d.
Instance gen_example_b(int dim, int d, std::uint64_t seed,
                       Exponent outer_p = Exponent::finite(2.0), double m = 3.0,
                       Field field = Field::real);

/// Random dense tuple with outer exponent inf and mixed codomain exponents.
Instance gen_random_infty(int dim, int d, std::uint64_t seed, Exponent domain_p,
                          Field field = Field::real);

/// Tuple of functionals (1-dimensional codomains, outer inf) on l_p^dim.
Instance gen_functional_tuple(int dim, int d, std::uint64_t seed, Exponent domain_p,
                              bool equal_norms, Field field = Field::real);

/// Diagonal family on l_m^d: component n fixes coordinates 1 and n and damps
/// the rest by 1/(n+1). For n >= 2 the attainment set spans two coordinates
/// (not smooth); the joint maximizer is the first coordinate vector only, so
/// the tuple itself is smooth.
Instance gen_lmd_example(double m = 3.0, int d = 3);

// --- executable checks -------------------------------------------------------

CheckReport check_golden_numbers(const SolveConfig& cfg = {});
CheckReport check_max_distance_infty(const Instance& inst, const SolveConfig& cfg = {},
                                     double tol = 1e-5);
CheckReport check_sum_distance_theorem(const Instance& inst, const SolveConfig& cfg = {},
                                       double tol = 1e-5);
CheckReport check_pointwise_distance(const Instance& inst, const SolveConfig& cfg = {},
                                     double tol = 1e-6);
CheckReport check_bj_equivalence_finite_p(const Instance& inst, const SolveConfig& cfg = {});
CheckReport check_bj_equivalence_infty(const Instance& inst, const SolveConfig& cfg = {});
CheckReport check_kernel_distance_corollary(const Instance& inst,
                                            const SolveConfig& cfg = {}, double tol = 1e-5);
CheckReport check_rho_sandwich(const Instance& inst, const SolveConfig& cfg = {},
                               double tol = 1e-4);
CheckReport check_rho_infty(const Instance& inst, const SolveConfig& cfg = {},
                            double tol = 1e-4);
CheckReport check_smoothness(const Instance& inst, const SolveConfig& cfg = {});

// --- suite -------------------------------------------------------------------

struct SuiteOptions {
  std::uint64_t seed = 7;
  int count = 6;  // generated instances per family; 0 = fixed instances only
  SolveConfig cfg;
  std::optional<std::string> only_theorem;
  /// Overrides every conclusion tolerance (0 forces float-level violations;
  /// exists so the harness can prove it is able to fail).
  std::optional<double> tolerance_override;
};

struct SuiteSummary {
  std::vector<CheckReport> reports;
  int holds = 0;
  int vacuous = 0;
  int violated = 0;
};

/// Runs every checker over the fixed instances plus `count` generated
/// instances per family. Deterministic for a fixed seed.
SuiteSummary run_suite(const SuiteOptions& opt);

}  // namespace optuple
