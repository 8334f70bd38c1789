#pragma once

#include <vector>

#include "sbal/grassmann.hpp"
#include "sbal/supermatrix.hpp"

namespace sbal {

// Homogeneous C^{0|N}-point of P^{p|q}: p+1 even and q odd coordinates over
// Gamma_N, modulo even invertible scaling.  Parity of each coordinate is
// enforced at construction; having an invertible even coordinate is a
// queryable property (norms are defined for arbitrary coordinate tuples,
// charts only for valid points).
class ProjectivePoint {
 public:
  ProjectivePoint(AlgebraContext ctx, std::vector<Multivector> even,
                  std::vector<Multivector> odd);

  const AlgebraContext& context() const noexcept { return ctx_; }
  int p() const noexcept { return static_cast<int>(even_.size()) - 1; }
  int q() const noexcept { return static_cast<int>(odd_.size()); }
  const Multivector& even_coord(int i) const { return even_.at(static_cast<std::size_t>(i)); }
  const Multivector& odd_coord(int i) const { return odd_.at(static_cast<std::size_t>(i)); }
  const std::vector<Multivector>& even_coords() const noexcept { return even_; }
  const std::vector<Multivector>& odd_coords() const noexcept { return odd_; }

  // at least one even coordinate has nonzero body
  bool is_valid() const;

 private:
  AlgebraContext ctx_;
  std::vector<Multivector> even_;
  std::vector<Multivector> odd_;
};

// Affine view in chart i: Xi_l = z_l / z_i (Xi_i = 1), Theta_r = theta_r / z_i.
struct AffineChartPoint {
  AlgebraContext ctx;
  int chart = 0;
  std::vector<Multivector> xi;     // size p+1, xi[chart] == 1
  std::vector<Multivector> theta;  // size q
};

AffineChartPoint normalize(const ProjectivePoint& pt, int chart);
AffineChartPoint change_chart(const AffineChartPoint& p, int chart);
ProjectivePoint homogeneous(const AffineChartPoint& p);

bool projectively_equal(const ProjectivePoint& a, const ProjectivePoint& b,
                        double tolerance = 1e-10);

// sum z conj(z) + i sum theta conj(theta); real under the fixed conjugation
EvenElement super_norm(const ProjectivePoint& pt);

// super_norm(pt) - r, the functor-of-points form of the norm quadric
EvenElement evaluate_constraint(const ProjectivePoint& pt,
                                const EvenElement& r);

// Matrix B with entries z_i conj(z_k), z_i conj(theta_K), theta_I conj(z_k)
// and i theta_I conj(theta_K), all over the super-norm.
SuperMatrix fs_b_matrix(const ProjectivePoint& pt);

// Kaehler potential in a chart: the log argument of the Fubini-Study form.
EvenElement fs_potential(const AffineChartPoint& pt);

// Potential of the degree-m section embedding (log argument of omega_m).
EvenElement section_fs_potential(int m, const AffineChartPoint& pt);

// Monomial section basis of degree m on P^{1|2}, mapping into P^{2m-1|2m}.
// Ordering: even outputs are z0^m, z0^{m-1} z1, ..., z1^m followed by the
// theta1 theta2 monomials z0^{m-2-j} z1^j; odd outputs are
// z0^{m-1-j} z1^j theta_I with j outer and I inner.
ProjectivePoint veronese_map(int m, const ProjectivePoint& pt);

}  // namespace sbal
