#pragma once

#include <bit>
#include <random>

#include "sbal/projective.hpp"
#include "sbal/supermatrix.hpp"

namespace sbal::testing {

// seeded generator so every run sees the same data
struct Rng {
  explicit Rng(std::uint64_t seed = 0xC0FFEE) : gen(seed) {}

  std::mt19937_64 gen;
  std::uniform_real_distribution<double> dist{-1.0, 1.0};

  double real() { return dist(gen); }
  Complex cplx() { return {dist(gen), dist(gen)}; }

  Multivector general(const AlgebraContext& ctx) {
    Multivector m(ctx);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ctx.generators());
         ++mask)
      m.add_term(mask, cplx());
    return m;
  }

  Multivector even(const AlgebraContext& ctx, bool invertible = true) {
    Multivector m(ctx);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ctx.generators());
         ++mask)
      if (!(std::popcount(mask) & 1)) m.add_term(mask, cplx());
    if (invertible) m.add_term(0, Complex(2.0, 0.0));
    return m;
  }

  Multivector odd(const AlgebraContext& ctx) {
    Multivector m(ctx);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ctx.generators());
         ++mask)
      if (std::popcount(mask) & 1) m.add_term(mask, cplx());
    return m;
  }

  // generic invertible GL(1|1) element over ctx
  SuperMatrix gl11(const AlgebraContext& ctx) {
    SuperMatrix g(ctx, 1, 1);
    g.set(0, 0, even(ctx));
    g.set(1, 1, even(ctx));
    g.set(0, 1, odd(ctx));
    g.set(1, 0, odd(ctx));
    return g;
  }

  ProjectivePoint point(const AlgebraContext& ctx, int p, int q) {
    std::vector<Multivector> evens, odds;
    for (int i = 0; i <= p; ++i) evens.push_back(even(ctx));
    for (int i = 0; i < q; ++i) odds.push_back(odd(ctx));
    return ProjectivePoint(ctx, std::move(evens), std::move(odds));
  }

  // random unitary of blocks (pe|q), built from embedded U(1|1) factors and
  // diagonal phases
  SuperMatrix unitary(const AlgebraContext& ctx, int pe, int q) {
    SuperMatrix g = SuperMatrix::identity(ctx, pe, q);
    for (int i = 0; i < pe; ++i) {
      SuperMatrix d = SuperMatrix::identity(ctx, pe, q);
      d.set(i, i, Multivector::scalar(
                      ctx, std::exp(Complex(0.0, real() * 3.14159))));
      g = matmul(g, d);
    }
    for (int i = 0; i < pe; ++i) {
      for (int j = 0; j < q; ++j) {
        const SuperMatrix u = u11_element(real() * 3.14159,
                                          OddElement(odd(ctx)));
        SuperMatrix e = SuperMatrix::identity(ctx, pe, q);
        e.set(i, i, u.at(0, 0));
        e.set(i, pe + j, u.at(0, 1));
        e.set(pe + j, i, u.at(1, 0));
        e.set(pe + j, pe + j, u.at(1, 1));
        g = matmul(g, e);
      }
    }
    return g;
  }
};

inline Multivector scalar1(const AlgebraContext& ctx) {
  return Multivector::scalar(ctx, Complex(1.0, 0.0));
}

}  // namespace sbal::testing
