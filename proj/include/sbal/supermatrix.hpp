#pragma once

#include <vector>

#include "sbal/grassmann.hpp"

namespace sbal {

class ProjectivePoint;  // see projective.hpp

// (p|q)-graded square matrix over a Grassmann algebra, stored dense
// ((p+q) x (p+q), row-major).  Index r is even for r < p, odd otherwise.
class SuperMatrix {
 public:
  SuperMatrix(AlgebraContext ctx, int p, int q);
  static SuperMatrix identity(const AlgebraContext& ctx, int p, int q);

  const AlgebraContext& context() const noexcept { return ctx_; }
  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  int dim() const noexcept { return p_ + q_; }
  int index_parity(int r) const noexcept { return r < p_ ? 0 : 1; }

  const Multivector& at(int r, int c) const;
  void set(int r, int c, Multivector v);

  // grading consistency: diagonal blocks even, mixed blocks odd
  bool is_homogeneous() const;

 private:
  AlgebraContext ctx_;
  int p_, q_;
  std::vector<Multivector> entries_;
};

SuperMatrix matmul(const SuperMatrix& g1, const SuperMatrix& g2);

// Determinant of a matrix of even (hence commuting) Grassmann elements.
// Cofactor expansion for n <= 4, Bird's division-free algorithm above.
Multivector even_determinant(const std::vector<Multivector>& entries, int n);

// Berezinian det(A - B D^-1 C) det(D)^-1 over the commutative even
// subalgebra.  For GL(1|1) this reduces to z1/z2 - theta1 theta2 / z2^2
// with theta1 the top-right and theta2 the bottom-left entry (the unique
// sign for which the Berezinian is multiplicative).
EvenElement berezinian(const SuperMatrix& g);

// Hermitian transpose with the -i factor on odd entries:
// (a, alpha; beta, b) -> (conj a, -i conj beta; -i conj alpha, conj b),
// extended blockwise to general (p|q).
SuperMatrix dagger(const SuperMatrix& g);

struct UnitaryReport {
  double residual = 0.0;  // max coefficient of dagger(g) g - I
  bool unitary = false;
};

UnitaryReport is_unitary(const SuperMatrix& g, double tolerance = 1e-10);

// U(1|1) element for a real phase psi and a generic odd gamma.  The
// relative sign of the odd entries is fixed by dagger(U) U = I.
SuperMatrix u11_element(double psi, const OddElement& gamma);

struct Sl11Report {
  double berezinian_residual = 0.0;  // max coeff of Ber(g) - 1
  double constraint_residual = 0.0;  // max coeff of z1 - z2 - theta1 theta2 / z2
  bool in_sl11 = false;
};

Sl11Report sl11_check(const SuperMatrix& g, double tolerance = 1e-10);

// Linear action on homogeneous coordinates of a projective point;
// g must be (p+1|q)-graded for a point of P^{p|q}.
ProjectivePoint act(const SuperMatrix& g, const ProjectivePoint& pt);

}  // namespace sbal
