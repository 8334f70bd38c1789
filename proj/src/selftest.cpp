#include "sbal/selftest.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "sbal/balance.hpp"
#include "sbal/integrate.hpp"
#include "sbal/projective.hpp"
#include "sbal/supermatrix.hpp"

namespace sbal {

namespace {

struct Rng {
  std::mt19937_64 gen{0x5ba1u};
  std::uniform_real_distribution<double> dist{-1.0, 1.0};
  Complex cplx() { return {dist(gen), dist(gen)}; }
  Multivector general(const AlgebraContext& ctx) {
    Multivector m(ctx);
    const std::uint64_t top = std::uint64_t{1} << ctx.generators();
    for (std::uint64_t mask = 0; mask < top; ++mask) m.add_term(mask, cplx());
    return m;
  }
  Multivector even(const AlgebraContext& ctx, bool invertible) {
    Multivector m(ctx);
    const std::uint64_t top = std::uint64_t{1} << ctx.generators();
    for (std::uint64_t mask = 0; mask < top; ++mask)
      if (!(std::popcount(mask) & 1)) m.add_term(mask, cplx());
    if (invertible)
      m.add_term(0, Complex(2.0, 0.0));  // push the body away from zero
    return m;
  }
  Multivector odd(const AlgebraContext& ctx) {
    Multivector m(ctx);
    const std::uint64_t top = std::uint64_t{1} << ctx.generators();
    for (std::uint64_t mask = 0; mask < top; ++mask)
      if (std::popcount(mask) & 1) m.add_term(mask, cplx());
    return m;
  }
};

struct Check {
  std::ostream& out;
  int failures = 0;
  void operator()(const char* name, double value, double bound) {
    const bool ok = value <= bound;
    if (!ok) ++failures;
    out << (ok ? "ok   " : "FAIL ") << name << "  (" << value << " <= " << bound
        << ")\n";
  }
};

}  // namespace

int run_selftest(std::ostream& out) {
  Rng rng;
  Check check{out};
  const AlgebraContext ctx{2, 1e-13};

  {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Multivector a = rng.general(ctx), b = rng.general(ctx),
                        c = rng.general(ctx);
      worst = std::max(worst, max_abs_diff((a * b) * c, a * (b * c)));
    }
    check("algebra associativity", worst, 1e-12);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Multivector a = rng.even(ctx, false), b = rng.odd(ctx);
      worst = std::max(worst, max_abs_diff(a * b, b * a));       // even commutes
      worst = std::max(worst, max_abs_diff(b * b, -(b * b)));    // odd squares vanish
    }
    check("super-commutativity", worst, 1e-12);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      Multivector s = rng.general(ctx);
      s = s - Multivector::scalar(ctx, s.body());
      Multivector p = s;
      for (int k = 0; k < ctx.n_pairs; ++k) p = p * s;  // s^(N+1)
      worst = std::max(worst, p.max_abs());
      const Multivector a = rng.even(ctx, true);
      const Multivector inv = invert(a);
      const Multivector one = Multivector::scalar(ctx, Complex(1.0, 0.0));
      worst = std::max(worst, max_abs_diff(a * inv, one));
      worst = std::max(worst, max_abs_diff(inv * a, one));
      worst = std::max(worst, max_abs_diff(conjugate(conjugate(a)), a));
      worst = std::max(
          worst, max_abs_diff(analytic_apply(reciprocal_fn(), EvenElement(a)).mv(),
                              inv));
    }
    check("nilpotency / inverse / conjugation", worst, 1e-12);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      SuperMatrix g1(ctx, 1, 1), g2(ctx, 1, 1);
      for (auto* g : {&g1, &g2}) {
        g->set(0, 0, rng.even(ctx, true));
        g->set(1, 1, rng.even(ctx, true));
        g->set(0, 1, rng.odd(ctx));
        g->set(1, 0, rng.odd(ctx));
      }
      const Multivector lhs = berezinian(matmul(g1, g2)).mv();
      const Multivector rhs = berezinian(g1).mv() * berezinian(g2).mv();
      worst = std::max(worst, max_abs_diff(lhs, rhs));
    }
    check("berezinian multiplicativity", worst, 1e-12);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const SuperMatrix u = u11_element(rng.dist(rng.gen) * std::numbers::pi,
                                        OddElement(rng.odd(ctx)));
      worst = std::max(worst, is_unitary(u).residual);
    }
    check("u(1|1) unitarity", worst, 1e-13);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      std::vector<Multivector> evens, odds;
      for (int k = 0; k < 3; ++k) evens.push_back(rng.even(ctx, true));
      for (int k = 0; k < 2; ++k) odds.push_back(rng.odd(ctx));
      const ProjectivePoint pt(ctx, evens, odds);
      const AffineChartPoint c0 = normalize(pt, 0);
      const AffineChartPoint c010 = change_chart(change_chart(c0, 1), 0);
      for (std::size_t k = 0; k < c0.xi.size(); ++k)
        worst = std::max(worst, max_abs_diff(c0.xi[k], c010.xi[k]));
      const AffineChartPoint loop =
          change_chart(change_chart(change_chart(c0, 1), 2), 0);
      for (std::size_t k = 0; k < c0.theta.size(); ++k)
        worst = std::max(worst, max_abs_diff(c0.theta[k], loop.theta[k]));
    }
    check("chart cocycles", worst, 1e-12);
  }
  {
    const QuadratureSpec spec;
    const auto a = plane_quadrature(
        [](Complex z) { return Complex(1.0, 0.0) / std::pow(1.0 + std::norm(z), 2); },
        spec);
    const auto b = plane_quadrature(
        [](Complex z) {
          return Complex(std::norm(z), 0.0) / std::pow(1.0 + std::norm(z), 3);
        },
        spec);
    const auto c = plane_quadrature(
        [](Complex z) { return z / std::pow(1.0 + std::norm(z), 3); }, spec);
    check("quadrature pi", std::abs(a.value - std::numbers::pi), 1e-8);
    check("quadrature pi/2", std::abs(b.value - std::numbers::pi / 2), 1e-8);
    check("quadrature angular selection", std::abs(c.value), 1e-12);
  }
  {
    const SolvedPoint s = solve_point_balance(
        {{{Complex(1.0, 0.0), Complex(0.0, 0.0)},
          {Complex(0.0, 0.0), Complex(1.0, 0.0)}}});
    check("balanced point residual", s.report.residual_even, 1e-10);
    check("balanced point lambda+eta", std::abs(s.report.lambda_plus_eta), 1e-10);
  }
  return check.failures;
}

}  // namespace sbal
