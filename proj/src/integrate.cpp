#include "sbal/integrate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace sbal {

void QuadratureSpec::validate() const {
  if (radial < 4 || angular < 4)
    throw err::invalid_argument("QuadratureSpec: node counts must be >= 4");
  if (tol <= 0) throw err::invalid_argument("QuadratureSpec: tol must be > 0");
  if (max_doublings < 0 || max_doublings > 6)
    throw err::invalid_argument("QuadratureSpec: max_doublings out of range");
}

void gauss_legendre_01(int n, std::vector<double>& nodes,
                       std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const double pi = std::numbers::pi;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre P_n(x) and derivative by recurrence
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1,1] -> [0,1]; keep the symmetric partner
    nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    weights[static_cast<std::size_t>(i)] = 0.5 * w;
    nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
    weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
  }
}

namespace {

Complex plane_sum(const std::function<Complex(Complex)>& f, int n_radial,
                  int n_angular) {
  std::vector<double> t, w;
  gauss_legendre_01(n_radial, t, w);
  const double two_pi = 2.0 * std::numbers::pi;
  const double dphi = two_pi / n_angular;
  Complex acc(0.0, 0.0);
  for (int i = 0; i < n_radial; ++i) {
    const double ti = t[static_cast<std::size_t>(i)];
    const double r = std::sqrt(ti / (1.0 - ti));
    // dA = r dr dphi with r dr = dt / (2 (1-t)^2)
    const double jac = 0.5 / ((1.0 - ti) * (1.0 - ti));
    Complex ring(0.0, 0.0);
    for (int j = 0; j < n_angular; ++j) {
      const double phi = dphi * j;
      ring += f(Complex(r * std::cos(phi), r * std::sin(phi)));
    }
    acc += w[static_cast<std::size_t>(i)] * jac * dphi * ring;
  }
  return acc;
}

}  // namespace

QuadratureResult plane_quadrature(const std::function<Complex(Complex)>& f,
                                  const QuadratureSpec& spec) {
  spec.validate();
  Complex prev = plane_sum(f, spec.radial, spec.angular);
  if (spec.max_doublings == 0)  // fixed-node evaluation, no refinement check
    return {prev, 0.0, spec.radial, spec.angular};
  for (int k = 1; k <= spec.max_doublings; ++k) {
    const int nr = spec.radial << k;
    const int na = spec.angular << k;
    const Complex cur = plane_sum(f, nr, na);
    const double delta = std::abs(cur - prev);
    if (delta <= spec.tol) return {cur, delta, nr, na};
    prev = cur;
  }
  std::ostringstream os;
  os << "plane_quadrature: tolerance " << spec.tol
     << " not reached at max refinement (" << (spec.radial << spec.max_doublings)
     << " x " << (spec.angular << spec.max_doublings) << " nodes)";
  throw err::quadrature_tolerance(os.str());
}

Complex cy_extract(const Multivector& f) {
  const AlgebraContext& ctx = f.context();
  if (ctx.n_pairs != 2)
    throw err::invalid_argument("cy_extract: context must have 2 pairs");
  // epsilon_{ij} d/dtheta^i d/dtheta^j epsilon_{kl} d/dthetabar^k d/dthetabar^l
  const std::vector<int> order{ctx.eta(1), ctx.eta(2), ctx.etabar(1),
                               ctx.etabar(2)};
  return kCyContraction * berezin(f, order).body();
}

QuadratureResult cy_integrate_p12(const SuperIntegrand& f,
                                  const QuadratureSpec& spec,
                                  RadialWeight weight) {
  auto scalar = [&f, weight](Complex z) -> Complex {
    Complex v = cy_extract(f.eval(z));
    if (weight == RadialWeight::z_squared) v *= std::norm(z);
    return v;
  };
  return plane_quadrature(scalar, spec);
}

Multivector point_gaussian_weight(const AlgebraContext& ctx) {
  Multivector arg = Multivector::zero(ctx);
  for (int i = 1; i <= ctx.n_pairs; ++i) {
    const std::uint64_t mask = (std::uint64_t{1} << ctx.eta(i)) |
                               (std::uint64_t{1} << ctx.etabar(i));
    arg.add_term(mask, Complex(0.0, 1.0));  // i eta_i etabar_i, ascending order
  }
  return analytic_apply(exp_fn(), EvenElement(arg)).mv();
}

Complex berezin_point_integrate(const Multivector& f, PointWeight weight) {
  const AlgebraContext& ctx = f.context();
  Multivector integrand = f;
  if (weight == PointWeight::exp)
    integrand = integrand * point_gaussian_weight(ctx);
  return berezin(integrand, point_measure_order(ctx)).body();
}

}  // namespace sbal
