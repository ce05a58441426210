#include <doctest.h>

#include <cmath>
#include <random>

#include "optuple/normcalc.hpp"
#include "optuple/theorems.hpp"
#include "oracles.hpp"

using namespace optuple;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LpSpace sp(int dim, double p, Field f = Field::real) {
  return LpSpace(dim, Exponent::from_value(p), f);
}

void check_norm_result_invariants(const NormResult& r, const OperatorTuple& T,
                                  const SolveConfig& cfg) {
  REQUIRE(!r.witnesses.empty());
  for (const Vector& w : r.witnesses) {
    CHECK(lp_norm(w) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(tuple_image_norm(T, w) >= r.value - cfg.tol_norm * std::max(1.0, r.value));
    CHECK(r.value >= tuple_image_norm(T, w) - cfg.tol_norm * std::max(1.0, r.value));
  }
}

}  // namespace

TEST_SUITE_BEGIN("normcalc");

TEST_CASE("identity norm is 1 for every exponent") {
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    const LpSpace s = sp(3, p);
    const NormResult r = operator_norm(Operator::identity(s));
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
    check_norm_result_invariants(r, OperatorTuple::single(Operator::identity(s)), {});
  }
}

TEST_CASE("first golden component: norm 1 attained at the second axis") {
  const Instance g = golden_counterexample();
  const NormResult r = operator_norm(g.T.component(0));
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.method == NormMethod::exact_spectral);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(orbit_distance(r.witnesses.front(),
                       Vector::from_reals(g.T.domain(), {0, 1})) < 1e-9);
}

TEST_CASE("power iteration agrees with the brute-force oracle") {
  std::mt19937_64 rng(101);
  SolveConfig cfg;
  cfg.starts = 24;
  const Exponent dom = Exponent::finite(3.0);
  const Exponent cod = Exponent::finite(1.5);
  for (int rep = 0; rep < 12; ++rep) {
    const Operator T =
        oracles::random_operator(LpSpace(2, dom), LpSpace(2, cod), rng);
    const NormResult fast = operator_norm(T, cfg);
    CHECK(fast.method == NormMethod::power_iteration);
    const NormResult slow = brute_force_norm(T, 360, cfg);
    CHECK(fast.value == doctest::Approx(slow.value).epsilon(1e-5));
    check_norm_result_invariants(fast, OperatorTuple::single(T), cfg);
  }
}

TEST_CASE("golden tuple norm and witness orbit") {
  const Instance g = golden_counterexample();
  const NormResult r = tuple_norm(g.T);
  CHECK(r.value == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-9));
  check_norm_result_invariants(r, g.T, {});
  // every unit vector attains here; the attainment set must flag incompleteness
  const AttainmentSet att = attainment_set_from(r, {});
  CHECK_FALSE(att.complete_flag);
}

TEST_CASE("outer-infinity tuple norm is the component max") {
  const LpSpace s = sp(2, 2);
  std::vector<Operator> comps = {cx(1.0, 0) * Operator::identity(s),
                                 cx(0.5, 0) * Operator::identity(s),
                                 cx(0.25, 0) * Operator::identity(s)};
  const OperatorTuple T(comps, Exponent::infinity());
  const NormResult r = tuple_norm(T);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));

  SolveConfig generic;
  generic.fast_norm_paths = false;
  generic.starts = 24;
  const NormResult slow = tuple_norm(T, generic);
  CHECK(slow.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("diagonal family norm: ||T||^p = d at the first axis") {
  for (int k = 0; k < 4; ++k) {
    const Instance b = gen_example_b(3, 2 + k % 2, 77 + k, Exponent::finite(2.0 + k));
    const double p = b.T.outer_p().value();
    const NormResult r = tuple_norm(b.T);
    CHECK(std::pow(r.value, p) == doctest::Approx(b.T.size()).epsilon(1e-9));
  }
}

TEST_CASE("attainment sets on the pinned examples") {
  const Instance g = golden_counterexample();
  const AttainmentSet a1 = attainment_set(g.T.component(0));
  REQUIRE(a1.representatives.size() == 1);
  CHECK(a1.complete_flag);
  CHECK(orbit_distance(a1.representatives.front(),
                       Vector::from_reals(g.T.domain(), {0, 1})) < 1e-9);

  const AttainmentSet aid = attainment_set(Operator::identity(sp(2, 2)));
  CHECK(aid.representatives.size() >= 2);
  CHECK_FALSE(aid.complete_flag);

  const Instance b = gen_example_b(3, 2, 5, Exponent::finite(2.0));
  const AttainmentSet ab = attainment_set(b.T);
  REQUIRE(ab.representatives.size() == 1);
  CHECK(orbit_distance(ab.representatives.front(),
                       Vector::unit(b.T.domain(), 0)) < 1e-7);
}

TEST_CASE("joint attainment: diagonal family yes, golden pair no, d=1 always") {
  const Instance b = gen_example_b(3, 3, 9, Exponent::finite(2.0));
  const JointAttainment jb = joint_attainment_check(b.T);
  CHECK(jb.nonempty);
  CHECK(orbit_distance(jb.witness, Vector::unit(b.T.domain(), 0)) < 1e-5);

  const Instance g = golden_counterexample();
  const JointAttainment jg = joint_attainment_check(g.T);
  CHECK_FALSE(jg.nonempty);
  CHECK(jg.margin < -0.1);  // the max-min sits well below zero here

  const OperatorTuple single = OperatorTuple::single(g.T.component(0));
  CHECK(joint_attainment_check(single).nonempty);
}

TEST_CASE("joint attainment implies the power-sum identity") {
  SolveConfig cfg;
  cfg.starts = 24;
  for (int k = 0; k < 3; ++k) {
    const Instance inst = k % 2 == 0
                              ? gen_example_a(2 + k, 2, 31 + k, Exponent::finite(2.0))
                              : gen_example_b(3, 2, 31 + k, Exponent::finite(3.0));
    const JointAttainment j = joint_attainment_check(inst.T, cfg);
    REQUIRE(j.nonempty);
    const double p = inst.T.outer_p().value();
    double sum = 0.0;
    for (double n : j.component_norms) sum += std::pow(n, p);
    const NormResult tn = tuple_norm(inst.T, cfg);
    CHECK(std::pow(tn.value, p) ==
          doctest::Approx(sum).epsilon(1e-6 * inst.T.size()));
    // tuple maximizers lie in every component's epsilon-attainment set
    for (const Vector& w : tn.witnesses)
      for (int i = 0; i < inst.T.size(); ++i)
        CHECK(lp_norm(apply(inst.T.component(i), w)) >=
              j.component_norms[static_cast<size_t>(i)] - 1e-6);
  }
}

TEST_CASE("tuple norms are monotone as the outer exponent grows") {
  std::mt19937_64 rng(303);
  const LpSpace dom = sp(3, 2.5);
  const LpSpace cod = sp(2, 2);
  std::vector<Operator> comps = {oracles::random_operator(dom, cod, rng),
                                 oracles::random_operator(dom, cod, rng)};
  SolveConfig cfg;
  cfg.starts = 24;
  double prev = kInf;
  for (double p : {1.0, 1.5, 2.0, 3.0, 6.0, kInf}) {
    const OperatorTuple T(comps, Exponent::from_value(p));
    const double v = tuple_norm(T, cfg).value;
    CHECK(v <= prev + 1e-7);
    prev = v;
  }
}

TEST_CASE("brute force handles the pinned cases and rejects big dimensions") {
  const Instance g = golden_counterexample();
  const NormResult r = brute_force_norm(g.T, 360);
  CHECK(r.value == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-6));
  CHECK(r.method == NormMethod::brute_force);

  std::mt19937_64 rng(7);
  const Operator T = oracles::random_operator(sp(2, 2), sp(2, 2), rng);
  CHECK(brute_force_norm(T, 360).value ==
        doctest::Approx(operator_norm(T).value).epsilon(1e-8));

  const Operator big = oracles::random_operator(sp(4, 2), sp(2, 2), rng);
  CHECK_THROWS_AS(brute_force_norm(big, 60), DimensionTooLarge);
  const Operator cbig =
      oracles::random_operator(sp(3, 2, Field::cplx), sp(2, 2, Field::cplx), rng);
  CHECK_THROWS_AS(brute_force_norm(cbig, 60), DimensionTooLarge);
}

TEST_CASE("complex norms agree with the complex brute force") {
  std::mt19937_64 rng(909);
  SolveConfig cfg;
  cfg.starts = 24;
  for (int rep = 0; rep < 4; ++rep) {
    const Operator T = oracles::random_operator(sp(2, 3.0, Field::cplx),
                                                sp(2, 2.0, Field::cplx), rng);
    const NormResult fast = operator_norm(T, cfg);
    const NormResult slow = brute_force_norm(T, 240, cfg);
    CHECK(fast.value == doctest::Approx(slow.value).epsilon(1e-5));
  }
}

TEST_CASE("fixed seed makes results bit-reproducible") {
  std::mt19937_64 rng(55);
  const Operator T = oracles::random_operator(sp(3, 3), sp(3, 1.5), rng);
  SolveConfig cfg;
  cfg.starts = 16;
  const NormResult a = operator_norm(T, cfg);
  const NormResult b = operator_norm(T, cfg);
  CHECK(a.value == b.value);
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  for (size_t i = 0; i < a.witnesses.size(); ++i)
    for (int k = 0; k < a.witnesses[i].dim(); ++k)
      CHECK(a.witnesses[i][k] == b.witnesses[i][k]);
}

TEST_SUITE_END();
