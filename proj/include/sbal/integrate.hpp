#pragma once

#include <functional>
#include <vector>

#include "sbal/grassmann.hpp"

namespace sbal {

// Tensor-product rule over the complex plane: Gauss-Legendre in the
// compactified radial variable t = r^2/(1+r^2), equally spaced points in the
// angle.  Node counts double until two successive refinements agree.
struct QuadratureSpec {
  int radial = 64;
  int angular = 64;
  double tol = 1e-8;
  int max_doublings = 3;

  void validate() const;
};

struct QuadratureResult {
  Complex value;
  double error_estimate = 0.0;
  int radial_used = 0;
  int angular_used = 0;
};

// nodes/weights of the n-point Gauss-Legendre rule on [0,1]
void gauss_legendre_01(int n, std::vector<double>& nodes,
                       std::vector<double>& weights);

// Integral of f over C with Lebesgue measure dA.  Throws
// err::quadrature_tolerance when refinements keep disagreeing.
QuadratureResult plane_quadrature(const std::function<Complex(Complex)>& f,
                                  const QuadratureSpec& spec);

// Integrand on P^{1|2} in an affine chart: a multivector in theta_1, theta_2
// and conjugates whose coefficients depend on the chart coordinate z.
struct SuperIntegrand {
  AlgebraContext ctx;  // n_pairs = 2
  std::function<Multivector(Complex z)> eval;
};

// sign conventions of the fermionic contraction, exposed because every
// emitted number depends on them
inline constexpr int kEpsilon12 = 1;       // epsilon_{12} = +1
inline constexpr double kCyContraction = 4.0;  // two epsilon contractions

enum class RadialWeight {
  plain,      // dA, the chart-invariant normalization
  z_squared,  // |z|^2 dA
};

// top-coefficient extraction used by the Calabi-Yau measure:
// kCyContraction * (left derivatives theta1, theta2, thetabar1, thetabar2)
Complex cy_extract(const Multivector& f);

// Berezin extraction composed with plane quadrature; the default radial
// weight is |z|^2 per the compactified measure prescription, while the
// block integrals of the balancing engine use the plain (chart-invariant)
// weight.
QuadratureResult cy_integrate_p12(const SuperIntegrand& f,
                                  const QuadratureSpec& spec,
                                  RadialWeight weight = RadialWeight::z_squared);

enum class PointWeight { none, exp };

// Berezin integral over [eta_1, etabar_1, ..., eta_n, etabar_n]; with
// PointWeight::exp the integrand is first multiplied by
// exp(i sum_j eta_j etabar_j).
Complex berezin_point_integrate(const Multivector& f,
                                PointWeight weight = PointWeight::none);

// exp(i sum_j eta_j etabar_j) as a multivector
Multivector point_gaussian_weight(const AlgebraContext& ctx);

}  // namespace sbal
