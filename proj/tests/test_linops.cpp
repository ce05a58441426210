#include <doctest.h>

#include <cmath>
#include <random>

static constexpr double kInf = std::numeric_limits<double>::infinity();

#include "optuple/nested.hpp"
#include "optuple/normcalc.hpp"
#include "optuple/theorems.hpp"
#include "oracles.hpp"

using namespace optuple;

TEST_SUITE_BEGIN("linops");

TEST_CASE("apply on the pinned examples") {
  const LpSpace s2(2, Exponent::finite(2.0));
  CHECK(apply(Operator::identity(s2), Vector::from_reals(s2, {1, 2}))[1].real() ==
        doctest::Approx(2.0));

  const Instance g = golden_counterexample();
  const Vector y = apply(g.T.component(0), Vector::from_reals(s2, {2, 3}));
  CHECK(y[0].real() == doctest::Approx(1.0));
  CHECK(y[1].real() == doctest::Approx(3.0));

  const Vector z = apply(Operator::zeros(s2, s2), Vector::from_reals(s2, {5, -7}));
  CHECK(lp_norm(z) == 0.0);

  CHECK_THROWS_AS(apply(g.T.component(0),
                        Vector::from_reals(LpSpace(3, Exponent::finite(2.0)), {1, 2, 3})),
                  DimensionMismatch);
}

TEST_CASE("tuple_apply and the joint codomain norm") {
  const Instance g = golden_counterexample();
  const LpSpace s2 = g.T.domain();
  const std::vector<Vector> images = tuple_apply(g.T, Vector::from_reals(s2, {1, 1}));
  REQUIRE(images.size() == 2);
  CHECK(images[0][0].real() == doctest::Approx(0.5));
  CHECK(images[0][1].real() == doctest::Approx(1.0));
  CHECK(images[1][0].real() == doctest::Approx(1.0));
  CHECK(images[1][1].real() == doctest::Approx(0.5));

  const double r = 1.0 / std::sqrt(2.0);
  const double n = tuple_codomain_norm(tuple_apply(g.T, Vector::from_reals(s2, {r, r})),
                                       g.T.outer_p());
  CHECK(n == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-12));

  // d = 1 reduces to the component norm; all-zero values give 0
  const std::vector<Vector> one = {images[0]};
  CHECK(tuple_codomain_norm(one, Exponent::finite(3.0)) ==
        doctest::Approx(lp_norm(images[0])));
  const std::vector<Vector> zero = {Vector::zeros(s2), Vector::zeros(s2)};
  CHECK(tuple_codomain_norm(zero, Exponent::finite(2.0)) == 0.0);
}

TEST_CASE("affine_tuple on the pinned examples and the affine identity") {
  const Instance g = golden_counterexample();
  CHECK(affine_tuple(g.T, g.S, DiagonalAction::zeros(2)).component(0).raw() ==
        g.T.component(0).raw());
  CHECK(affine_tuple(g.T, g.T, DiagonalAction::ones(2)).is_zero());

  DiagonalAction half = DiagonalAction::zeros(2);
  half.z = {cx(-0.5, 0.0), cx(-0.5, 0.0)};
  const OperatorTuple shifted = affine_tuple(g.T, g.S, half);
  CHECK(shifted.component(0).at(0, 0).real() == doctest::Approx(0.75));
  CHECK(shifted.component(0).at(0, 1).real() == doctest::Approx(-0.25));
  CHECK(shifted.component(0).at(1, 0).real() == doctest::Approx(0.25));
  CHECK(shifted.component(0).at(1, 1).real() == doctest::Approx(0.75));

  // affine in z: T - (az+bw)S == a(T - zS) + b(T - wS) - (a+b-1)T entrywise
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double a = u(rng), b = u(rng);
  DiagonalAction zz = DiagonalAction::zeros(2), ww = DiagonalAction::zeros(2),
                 mix = DiagonalAction::zeros(2);
  for (int i = 0; i < 2; ++i) {
    zz.z[i] = u(rng);
    ww.z[i] = u(rng);
    mix.z[i] = a * zz.z[i] + b * ww.z[i];
  }
  const OperatorTuple lhs = affine_tuple(g.T, g.S, mix);
  for (int i = 0; i < 2; ++i) {
    Operator rhs = cx(a, 0) * affine_tuple(g.T, g.S, zz).component(i) +
                   cx(b, 0) * affine_tuple(g.T, g.S, ww).component(i) -
                   cx(a + b - 1.0, 0) * g.T.component(i);
    for (size_t k = 0; k < rhs.raw().size(); ++k)
      CHECK(std::abs(lhs.component(i).raw()[k] - rhs.raw()[k]) < 1e-12);
  }
}

TEST_CASE("adjoint is an involution and preserves the induced norm") {
  const LpSpace s2(2, Exponent::finite(2.0));
  Operator sym = Operator::from_reals(s2, s2, {1, 2, 2, -3});
  const Operator adj = adjoint(sym);
  CHECK(adj.raw() == sym.raw());

  std::mt19937_64 rng(13);
  const LpSpace dom(2, Exponent::finite(3.0));
  const LpSpace cod(2, Exponent::finite(1.5));
  const Operator T = oracles::random_operator(dom, cod, rng);
  const Operator back = adjoint(adjoint(T));
  CHECK(back.raw() == T.raw());
  CHECK(back.domain() == T.domain());

  // ||T||_{p->q} = ||T*||_{q*->p*}
  const double nT = operator_norm(T).value;
  const double nA = operator_norm(adjoint(T)).value;
  CHECK(nT == doctest::Approx(nA).epsilon(1e-6));
}

TEST_CASE("nested norm equals the stacked norm when the exponents flatten") {
  std::mt19937_64 rng(17);
  for (double q : {1.0, 2.0, 3.0, kInf}) {
    const Exponent e = Exponent::from_value(q);
    const LpSpace dom(3, Exponent::finite(2.0));
    const LpSpace cod(2, e);
    std::vector<Operator> comps = {oracles::random_operator(dom, cod, rng),
                                   oracles::random_operator(dom, cod, rng),
                                   oracles::random_operator(dom, cod, rng)};
    const OperatorTuple T(comps, e);
    const Operator flat = stack(T, e);
    for (int rep = 0; rep < 20; ++rep) {
      const Vector x = oracles::random_unit_vector(dom, rng);
      const double nested = tuple_image_norm(T, x);
      const double stacked = lp_norm(apply(flat, x));
      CHECK(nested == doctest::Approx(stacked).epsilon(1e-12));
      for (const Operator& c : T.components())
        CHECK(lp_norm(apply(c, x)) <= nested + 1e-12);
    }
  }
}

TEST_CASE("tuple construction rejects mismatched shapes") {
  const LpSpace d2(2, Exponent::finite(2.0));
  const LpSpace d3(3, Exponent::finite(2.0));
  std::mt19937_64 rng(3);
  std::vector<Operator> bad = {oracles::random_operator(d2, d2, rng),
                               oracles::random_operator(d3, d2, rng)};
  CHECK_THROWS_AS(OperatorTuple(std::move(bad), Exponent::finite(2.0)), ShapeMismatch);
}

TEST_SUITE_END();
