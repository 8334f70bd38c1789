#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "sbal/json_io.hpp"

using namespace sbal;
using testing::Rng;

namespace {
const AlgebraContext kCtx{2, 1e-13};  // Gamma_4: eta1, eta2, etabar1, etabar2

Multivector gen(int i) { return Multivector::generator(kCtx, i); }
Multivector sc(Complex c) { return Multivector::scalar(kCtx, c); }
}  // namespace

TEST_CASE("product: nilpotency and antisymmetry") {
  const Multivector e1 = gen(kCtx.eta(1)), e2 = gen(kCtx.eta(2));
  CHECK((e1 * e1).is_zero());
  // eta2 eta1 = -eta1 eta2
  CHECK(max_abs_diff(e2 * e1, -(e1 * e2)) == doctest::Approx(0.0));
  // (1 + eta1 eta2)(1 - eta1 eta2) = 1
  const Multivector one = sc(Complex(1.0, 0.0));
  CHECK(max_abs_diff((one + e1 * e2) * (one - e1 * e2), one) <= 1e-15);
}

TEST_CASE("product: associativity and super-commutativity on random data") {
  Rng rng(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Multivector a = rng.general(kCtx), b = rng.general(kCtx),
                      c = rng.general(kCtx);
    worst = std::max(worst, max_abs_diff((a * b) * c, a * (b * c)));
  }
  CHECK(worst <= 1e-12);

  for (int i = 0; i < 100; ++i) {
    const Multivector ae = rng.even(kCtx, false), be = rng.even(kCtx, false);
    const Multivector ao = rng.odd(kCtx), bo = rng.odd(kCtx);
    CHECK(max_abs_diff(ae * be, be * ae) <= 1e-13);  // even-even commute
    CHECK(max_abs_diff(ae * bo, bo * ae) <= 1e-13);  // even-odd commute
    CHECK(max_abs_diff(ao * bo, -(bo * ao)) <= 1e-13);  // odd-odd anticommute
  }
}

TEST_CASE("product: context mismatch rejected") {
  const AlgebraContext other{3, 1e-13};
  CHECK_THROWS_AS(gen(0) * Multivector::generator(other, 0), Error);
}

TEST_CASE("conjugate: scalars, pairing, reality of i eta etabar") {
  CHECK(max_abs_diff(conjugate(sc(Complex(0.0, 1.0))), sc(Complex(0.0, -1.0))) ==
        doctest::Approx(0.0));
  CHECK(max_abs_diff(conjugate(gen(kCtx.eta(1))), gen(kCtx.etabar(1))) ==
        doctest::Approx(0.0));
  // conj(i eta1 etabar1) = i eta1 etabar1
  const Multivector x = Complex(0.0, 1.0) * (gen(kCtx.eta(1)) * gen(kCtx.etabar(1)));
  CHECK(max_abs_diff(conjugate(x), x) <= 1e-15);
}

TEST_CASE("conjugate: involution and homomorphism") {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const Multivector a = rng.general(kCtx), b = rng.general(kCtx);
    CHECK(max_abs_diff(conjugate(conjugate(a)), a) <= 1e-13);
    CHECK(max_abs_diff(conjugate(a * b), conjugate(a) * conjugate(b)) <= 1e-12);
  }
}

TEST_CASE("invert: scalars, nilpotent shifts, error path") {
  CHECK(max_abs_diff(invert(sc(Complex(2.0, 0.0))), sc(Complex(0.5, 0.0))) <=
        1e-15);
  const Multivector e12 = gen(kCtx.eta(1)) * gen(kCtx.eta(2));
  const Multivector one = sc(Complex(1.0, 0.0));
  CHECK(max_abs_diff(invert(one + e12), one - e12) <= 1e-15);
  CHECK_THROWS_AS(invert(e12), Error);
  try {
    invert(e12);
  } catch (const Error& e) {
    CHECK(e.code() == "non_invertible");
  }
}

TEST_CASE("invert: two-sided on random even elements") {
  Rng rng(3);
  const Multivector one = sc(Complex(1.0, 0.0));
  for (int i = 0; i < 200; ++i) {
    const Multivector a = rng.even(kCtx);
    CHECK(max_abs_diff(a * invert(a), one) <= 1e-12);
    CHECK(max_abs_diff(invert(a) * a, one) <= 1e-12);
  }
}

TEST_CASE("body is multiplicative") {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const Multivector a = rng.general(kCtx), b = rng.general(kCtx);
    CHECK(std::abs(body(a * b) - body(a) * body(b)) <= 1e-12);
  }
}

TEST_CASE("analytic_apply: Taylor rule in the nilpotent part") {
  // g(t + theta1 theta2) = g(t) + g'(t) theta1 theta2 for g = sin
  const AnalyticFunction sine{
      "sin", [](int k, Complex x) {
        switch (k % 4) {
          case 0: return std::sin(x);
          case 1: return std::cos(x);
          case 2: return -std::sin(x);
          default: return -std::cos(x);
        }
      }};
  const double t = 0.7;
  const Multivector e12 = gen(kCtx.eta(1)) * gen(kCtx.eta(2));
  const Multivector arg = sc(Complex(t, 0.0)) + e12;
  const Multivector expected =
      sc(std::sin(Complex(t, 0.0))) + std::cos(Complex(t, 0.0)) * e12;
  CHECK(max_abs_diff(analytic_apply(sine, EvenElement(arg)).mv(), expected) <=
        1e-13);
}

TEST_CASE("analytic_apply: builtins") {
  const Multivector one = sc(Complex(1.0, 0.0));
  // exp(0) = 1
  CHECK(max_abs_diff(analytic_apply(exp_fn(), EvenElement(sc(Complex(0.0, 0.0)))).mv(),
                     one) <= 1e-15);
  // log(1 + eta1 etabar1) = eta1 etabar1
  const Multivector u = gen(kCtx.eta(1)) * gen(kCtx.etabar(1));
  CHECK(max_abs_diff(analytic_apply(log_fn(), EvenElement(one + u)).mv(), u) <=
        1e-14);
  CHECK_THROWS_AS(analytic_apply(log_fn(), EvenElement(sc(Complex(0.0, 0.0)))),
                  Error);
  // reciprocal agrees with invert
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Multivector a = rng.even(kCtx);
    CHECK(max_abs_diff(analytic_apply(reciprocal_fn(), EvenElement(a)).mv(),
                       invert(a)) <= 1e-12);
  }
  // real power: (4 + soul)^(1/2) squared recovers the argument
  const Multivector arg = sc(Complex(4.0, 0.0)) + u;
  const Multivector root = analytic_apply(pow_fn(0.5), EvenElement(arg)).mv();
  CHECK(max_abs_diff(root * root, arg) <= 1e-13);
}

TEST_CASE("nilpotency: zero-body elements vanish at power N+1") {
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    Multivector s = rng.general(kCtx);
    s = s - sc(s.body());
    Multivector p = s;
    for (int k = 0; k < kCtx.n_pairs; ++k) p = p * s;
    CHECK(p.max_abs() <= 1e-12);
  }
}

TEST_CASE("berezin: defining examples") {
  const Multivector e1 = gen(kCtx.eta(1)), e2 = gen(kCtx.eta(2));
  // d_eta1 d_eta2 (eta1 eta2) = -1
  CHECK(max_abs_diff(berezin(e1 * e2, {kCtx.eta(1), kCtx.eta(2)}),
                     sc(Complex(-1.0, 0.0))) <= 1e-15);
  CHECK(berezin(sc(Complex(3.0, 1.0)), {kCtx.eta(1)}).is_zero());
  CHECK(max_abs_diff(berezin(e1, {kCtx.eta(1)}), sc(Complex(1.0, 0.0))) <=
        1e-15);
  CHECK_THROWS_AS(berezin(e1, {0, 0}), Error);
}

TEST_CASE("berezin: top monomial sign matches list-based expansion") {
  // product of all generators in canonical order, integrated in the measure
  // order, for N = 1..3 pairs
  for (int n = 1; n <= 3; ++n) {
    const AlgebraContext ctx{n, 1e-13};
    const std::uint64_t top = (std::uint64_t{1} << ctx.generators()) - 1;
    const Multivector t = Multivector::monomial(ctx, top, Complex(1.0, 0.0));
    const std::vector<int> order = point_measure_order(ctx);
    std::vector<int> word;
    for (int g = 0; g < ctx.generators(); ++g) word.push_back(g);
    const int expected = oracle::list_berezin_sign(word, order);
    REQUIRE(expected != 0);
    CHECK(max_abs_diff(berezin(t, order),
                       Multivector::scalar(ctx, Complex(expected, 0.0))) <=
          1e-15);
  }
}

TEST_CASE("berezin: partial lists keep untouched generators") {
  const Multivector e1 = gen(kCtx.eta(1)), e2 = gen(kCtx.eta(2));
  const Multivector f = e1 + e1 * e2;
  // d_eta2 (eta1 + eta1 eta2) = -eta1
  CHECK(max_abs_diff(berezin(f, {kCtx.eta(2)}), -e1) <= 1e-15);
}

TEST_CASE("parity wrappers") {
  CHECK_THROWS_AS(EvenElement(gen(0)), Error);
  CHECK_THROWS_AS(OddElement(sc(Complex(1.0, 0.0))), Error);
  CHECK_NOTHROW(EvenElement(Multivector::zero(kCtx)));
  CHECK_NOTHROW(OddElement(Multivector::zero(kCtx)));
}

TEST_CASE("json round trip is exact") {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const Multivector a = rng.general(kCtx);
    const Json j = to_json(a);
    const Multivector back = multivector_from_json(j);
    CHECK(max_abs_diff(a, back) == 0.0);
    CHECK(to_json(back).dump() == j.dump());  // byte-identical re-serialization
  }
}

TEST_CASE("pruning respects the context tolerance") {
  AlgebraContext loose{2, 1e-3};
  Multivector m(loose);
  m.add_term(0, Complex(1e-4, 0.0));
  CHECK(m.is_zero());
}
