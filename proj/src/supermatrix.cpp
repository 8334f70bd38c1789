#include "sbal/supermatrix.hpp"

#include <cmath>

#include "sbal/projective.hpp"

namespace sbal {

SuperMatrix::SuperMatrix(AlgebraContext ctx, int p, int q)
    : ctx_(ctx), p_(p), q_(q) {
  if (p < 0 || q < 0 || p + q < 1)
    throw err::invalid_argument("SuperMatrix: bad block dimensions");
  entries_.assign(static_cast<std::size_t>(dim()) * dim(),
                  Multivector::zero(ctx_));
}

SuperMatrix SuperMatrix::identity(const AlgebraContext& ctx, int p, int q) {
  SuperMatrix g(ctx, p, q);
  for (int r = 0; r < g.dim(); ++r)
    g.set(r, r, Multivector::scalar(ctx, Complex(1.0, 0.0)));
  return g;
}

const Multivector& SuperMatrix::at(int r, int c) const {
  if (r < 0 || c < 0 || r >= dim() || c >= dim())
    throw err::invalid_argument("SuperMatrix::at: index out of range");
  return entries_[static_cast<std::size_t>(r) * dim() + c];
}

void SuperMatrix::set(int r, int c, Multivector v) {
  if (r < 0 || c < 0 || r >= dim() || c >= dim())
    throw err::invalid_argument("SuperMatrix::set: index out of range");
  if (!(v.context() == ctx_)) throw err::context_mismatch("SuperMatrix::set");
  entries_[static_cast<std::size_t>(r) * dim() + c] = std::move(v);
}

bool SuperMatrix::is_homogeneous() const {
  for (int r = 0; r < dim(); ++r) {
    for (int c = 0; c < dim(); ++c) {
      const bool mixed = index_parity(r) != index_parity(c);
      const Multivector& e = at(r, c);
      if (mixed ? !e.has_odd_parity() : !e.has_even_parity()) return false;
    }
  }
  return true;
}

SuperMatrix matmul(const SuperMatrix& g1, const SuperMatrix& g2) {
  if (!(g1.context() == g2.context()))
    throw err::context_mismatch("matmul");
  if (g1.p() != g2.p() || g1.q() != g2.q())
    throw err::dimension_mismatch("matmul");
  SuperMatrix out(g1.context(), g1.p(), g1.q());
  for (int r = 0; r < g1.dim(); ++r) {
    for (int c = 0; c < g1.dim(); ++c) {
      Multivector acc = Multivector::zero(g1.context());
      for (int k = 0; k < g1.dim(); ++k) acc = acc + g1.at(r, k) * g2.at(k, c);
      out.set(r, c, acc);
    }
  }
  return out;
}

namespace {

Multivector cofactor_det(const std::vector<Multivector>& m, int n,
                         const AlgebraContext& ctx) {
  if (n == 1) return m[0];
  Multivector acc = Multivector::zero(ctx);
  std::vector<Multivector> minor;
  minor.reserve(static_cast<std::size_t>(n - 1) * (n - 1));
  for (int c = 0; c < n; ++c) {
    minor.clear();
    for (int r = 1; r < n; ++r)
      for (int cc = 0; cc < n; ++cc)
        if (cc != c) minor.push_back(m[static_cast<std::size_t>(r) * n + cc]);
    Multivector term = m[static_cast<std::size_t>(c)] *
                       cofactor_det(minor, n - 1, ctx);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// Bird (1974): X_{k+1} = mu(X_k) A with mu keeping the strict upper triangle
// and replacing the diagonal by d_i = -(x_{i+1,i+1} + ... + x_{nn});
// det A = (-1)^(n-1) (X_n)_{11}.
Multivector bird_det(const std::vector<Multivector>& a, int n,
                     const AlgebraContext& ctx) {
  auto at = [n](const std::vector<Multivector>& m, int r, int c) ->
      const Multivector& { return m[static_cast<std::size_t>(r) * n + c]; };
  std::vector<Multivector> x = a;
  for (int step = 1; step < n; ++step) {
    std::vector<Multivector> mu(static_cast<std::size_t>(n) * n,
                                Multivector::zero(ctx));
    Multivector tail = Multivector::zero(ctx);
    for (int i = n - 1; i >= 0; --i) {
      mu[static_cast<std::size_t>(i) * n + i] = -tail;
      tail = tail + at(x, i, i);
      for (int j = i + 1; j < n; ++j)
        mu[static_cast<std::size_t>(i) * n + j] = at(x, i, j);
    }
    std::vector<Multivector> next(static_cast<std::size_t>(n) * n,
                                  Multivector::zero(ctx));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        Multivector acc = Multivector::zero(ctx);
        for (int k = r; k < n; ++k)  // mu is upper triangular
          acc = acc + at(mu, r, k) * at(a, k, c);
        next[static_cast<std::size_t>(r) * n + c] = acc;
      }
    x = std::move(next);
  }
  Multivector det = at(x, 0, 0);
  return (n % 2 == 0) ? -det : det;
}

// adjugate of an even matrix via signed cofactor minors
std::vector<Multivector> even_adjugate(const std::vector<Multivector>& m,
                                       int n, const AlgebraContext& ctx) {
  std::vector<Multivector> adj(static_cast<std::size_t>(n) * n,
                               Multivector::zero(ctx));
  if (n == 1) {
    adj[0] = Multivector::scalar(ctx, Complex(1.0, 0.0));
    return adj;
  }
  std::vector<Multivector> minor;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      minor.clear();
      for (int rr = 0; rr < n; ++rr)
        for (int cc = 0; cc < n; ++cc)
          if (rr != r && cc != c)
            minor.push_back(m[static_cast<std::size_t>(rr) * n + cc]);
      Multivector cof = even_determinant(minor, n - 1);
      if ((r + c) % 2) cof = -cof;
      adj[static_cast<std::size_t>(c) * n + r] = cof;  // transposed
    }
  }
  return adj;
}

}  // namespace

Multivector even_determinant(const std::vector<Multivector>& entries, int n) {
  if (n < 1 || entries.size() != static_cast<std::size_t>(n) * n)
    throw err::invalid_argument("even_determinant: bad size");
  const AlgebraContext& ctx = entries[0].context();
  return n <= 4 ? cofactor_det(entries, n, ctx) : bird_det(entries, n, ctx);
}

EvenElement berezinian(const SuperMatrix& g) {
  const AlgebraContext& ctx = g.context();
  const int p = g.p(), q = g.q();
  if (q == 0) {
    std::vector<Multivector> a;
    for (int r = 0; r < p; ++r)
      for (int c = 0; c < p; ++c) a.push_back(g.at(r, c));
    return EvenElement(even_determinant(a, p));
  }
  std::vector<Multivector> d;
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < q; ++c) d.push_back(g.at(p + r, p + c));
  const Multivector det_d = even_determinant(d, q);
  if (std::abs(det_d.body()) <= ctx.zero_tolerance)
    throw err::non_invertible("berezinian: odd-odd block");
  if (p == 0) return EvenElement(invert(det_d));

  // D^-1 = adj(D) / det(D), then the Schur complement A - B D^-1 C
  const Multivector inv_det_d = invert(det_d);
  std::vector<Multivector> adj = even_adjugate(d, q, ctx);
  std::vector<Multivector> schur(static_cast<std::size_t>(p) * p,
                                 Multivector::zero(ctx));
  for (int r = 0; r < p; ++r) {
    for (int c = 0; c < p; ++c) {
      Multivector acc = g.at(r, c);
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
          Multivector t = g.at(r, p + i) *
                          (adj[static_cast<std::size_t>(i) * q + j] *
                           (inv_det_d * g.at(p + j, c)));
          acc = acc - t;
        }
      schur[static_cast<std::size_t>(r) * p + c] = acc;
    }
  }
  return EvenElement(even_determinant(schur, p) * inv_det_d);
}

SuperMatrix dagger(const SuperMatrix& g) {
  SuperMatrix out(g.context(), g.p(), g.q());
  const Complex minus_i(0.0, -1.0);
  for (int r = 0; r < g.dim(); ++r)
    for (int c = 0; c < g.dim(); ++c) {
      Multivector e = conjugate(g.at(c, r));
      if (g.index_parity(r) != g.index_parity(c)) e = minus_i * e;
      out.set(r, c, std::move(e));
    }
  return out;
}

UnitaryReport is_unitary(const SuperMatrix& g, double tolerance) {
  const SuperMatrix prod = matmul(dagger(g), g);
  double residual = 0.0;
  for (int r = 0; r < g.dim(); ++r)
    for (int c = 0; c < g.dim(); ++c) {
      Multivector diff = prod.at(r, c);
      if (r == c)
        diff = diff - Multivector::scalar(g.context(), Complex(1.0, 0.0));
      residual = std::max(residual, diff.max_abs());
    }
  return {residual, residual <= tolerance};
}

SuperMatrix u11_element(double psi, const OddElement& gamma) {
  const AlgebraContext& ctx = gamma.mv().context();
  const Multivector g = gamma.mv();
  const Multivector gbar = conjugate(g);
  const Multivector ggbar = g * gbar;
  const Complex phase = std::exp(Complex(0.0, psi));
  const Multivector one = Multivector::scalar(ctx, Complex(1.0, 0.0));

  SuperMatrix u(ctx, 1, 1);
  u.set(0, 0, one - Complex(0.0, 0.5) * ggbar);
  u.set(0, 1, Complex(0.0, 1.0) * phase * gbar);
  u.set(1, 0, g);
  u.set(1, 1, phase * (one + Complex(0.0, 0.5) * ggbar));
  return u;
}

Sl11Report sl11_check(const SuperMatrix& g, double tolerance) {
  if (g.p() != 1 || g.q() != 1)
    throw err::dimension_mismatch("sl11_check: expects a (1|1) matrix");
  const AlgebraContext& ctx = g.context();
  const Multivector one = Multivector::scalar(ctx, Complex(1.0, 0.0));
  const Multivector ber = berezinian(g).mv();
  const double ber_res = (ber - one).max_abs();
  // Ber = 1 is equivalent to z1 = z2 + theta1 theta2 / z2
  const Multivector z2 = g.at(1, 1);
  const Multivector constraint =
      g.at(0, 0) - z2 - g.at(0, 1) * g.at(1, 0) * invert(z2);
  const double con_res = constraint.max_abs();
  return {ber_res, con_res, ber_res <= tolerance && con_res <= tolerance};
}

ProjectivePoint act(const SuperMatrix& g, const ProjectivePoint& pt) {
  if (!(g.context() == pt.context())) throw err::context_mismatch("act");
  if (g.p() != pt.p() + 1 || g.q() != pt.q())
    throw err::dimension_mismatch("act: matrix blocks must be (p+1|q)");
  std::vector<Multivector> coords;
  coords.reserve(static_cast<std::size_t>(g.dim()));
  for (int i = 0; i <= pt.p(); ++i) coords.push_back(pt.even_coord(i));
  for (int i = 0; i < pt.q(); ++i) coords.push_back(pt.odd_coord(i));

  std::vector<Multivector> out(static_cast<std::size_t>(g.dim()),
                               Multivector::zero(g.context()));
  for (int r = 0; r < g.dim(); ++r)
    for (int c = 0; c < g.dim(); ++c)
      out[static_cast<std::size_t>(r)] =
          out[static_cast<std::size_t>(r)] + g.at(r, c) * coords[static_cast<std::size_t>(c)];

  std::vector<Multivector> evens(out.begin(), out.begin() + pt.p() + 1);
  std::vector<Multivector> odds(out.begin() + pt.p() + 1, out.end());
  return ProjectivePoint(g.context(), std::move(evens), std::move(odds));
}

}  // namespace sbal
