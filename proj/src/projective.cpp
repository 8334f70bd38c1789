#include "sbal/projective.hpp"

#include <cmath>

namespace sbal {

ProjectivePoint::ProjectivePoint(AlgebraContext ctx,
                                 std::vector<Multivector> even,
                                 std::vector<Multivector> odd)
    : ctx_(ctx), even_(std::move(even)), odd_(std::move(odd)) {
  if (even_.empty())
    throw err::invalid_argument("ProjectivePoint: need at least one even coordinate");
  for (const auto& z : even_) {
    if (!(z.context() == ctx_)) throw err::context_mismatch("ProjectivePoint");
    if (!z.has_even_parity())
      throw err::parity_violation("ProjectivePoint: even coordinate");
  }
  for (const auto& t : odd_) {
    if (!(t.context() == ctx_)) throw err::context_mismatch("ProjectivePoint");
    if (!t.has_odd_parity())
      throw err::parity_violation("ProjectivePoint: odd coordinate");
  }
}

bool ProjectivePoint::is_valid() const {
  for (const auto& z : even_)
    if (std::abs(z.body()) > ctx_.zero_tolerance) return true;
  return false;
}

AffineChartPoint normalize(const ProjectivePoint& pt, int chart) {
  if (chart < 0 || chart > pt.p())
    throw err::invalid_argument("normalize: chart index out of range");
  const Multivector& z = pt.even_coord(chart);
  if (std::abs(z.body()) <= pt.context().zero_tolerance)
    throw err::chart_undefined("normalize: pivot coordinate has zero body");
  const Multivector inv = invert(z);
  AffineChartPoint out;
  out.ctx = pt.context();
  out.chart = chart;
  for (int l = 0; l <= pt.p(); ++l) out.xi.push_back(pt.even_coord(l) * inv);
  for (int r = 0; r < pt.q(); ++r) out.theta.push_back(pt.odd_coord(r) * inv);
  return out;
}

AffineChartPoint change_chart(const AffineChartPoint& p, int chart) {
  if (chart < 0 || chart >= static_cast<int>(p.xi.size()))
    throw err::invalid_argument("change_chart: chart index out of range");
  const Multivector& pivot = p.xi[static_cast<std::size_t>(chart)];
  if (std::abs(pivot.body()) <= p.ctx.zero_tolerance)
    throw err::chart_undefined("change_chart: pivot has zero body");
  const Multivector inv = invert(pivot);
  AffineChartPoint out;
  out.ctx = p.ctx;
  out.chart = chart;
  for (const auto& xi : p.xi) out.xi.push_back(xi * inv);
  for (const auto& th : p.theta) out.theta.push_back(th * inv);
  return out;
}

ProjectivePoint homogeneous(const AffineChartPoint& p) {
  return ProjectivePoint(p.ctx, p.xi, p.theta);
}

bool projectively_equal(const ProjectivePoint& a, const ProjectivePoint& b,
                        double tolerance) {
  if (!(a.context() == b.context())) throw err::context_mismatch("projectively_equal");
  if (a.p() != b.p() || a.q() != b.q()) return false;
  if (!a.is_valid() || !b.is_valid()) return false;
  const double tol = a.context().zero_tolerance;
  int pivot = -1;
  for (int i = 0; i <= a.p(); ++i) {
    if (std::abs(a.even_coord(i).body()) > tol &&
        std::abs(b.even_coord(i).body()) > tol) {
      pivot = i;
      break;
    }
  }
  if (pivot < 0) return false;
  const AffineChartPoint ca = normalize(a, pivot);
  const AffineChartPoint cb = normalize(b, pivot);
  double diff = 0.0;
  for (std::size_t i = 0; i < ca.xi.size(); ++i)
    diff = std::max(diff, max_abs_diff(ca.xi[i], cb.xi[i]));
  for (std::size_t i = 0; i < ca.theta.size(); ++i)
    diff = std::max(diff, max_abs_diff(ca.theta[i], cb.theta[i]));
  return diff <= tolerance;
}

EvenElement super_norm(const ProjectivePoint& pt) {
  Multivector acc = Multivector::zero(pt.context());
  for (int i = 0; i <= pt.p(); ++i)
    acc = acc + pt.even_coord(i) * conjugate(pt.even_coord(i));
  for (int i = 0; i < pt.q(); ++i)
    acc = acc + Complex(0.0, 1.0) *
                    (pt.odd_coord(i) * conjugate(pt.odd_coord(i)));
  return EvenElement(acc);
}

EvenElement evaluate_constraint(const ProjectivePoint& pt,
                                const EvenElement& r) {
  return EvenElement(super_norm(pt).mv() - r.mv());
}

SuperMatrix fs_b_matrix(const ProjectivePoint& pt) {
  const Multivector norm = super_norm(pt).mv();
  const Complex b = norm.body();
  if (b.real() <= pt.context().zero_tolerance ||
      std::abs(b.imag()) > 1e-9 * std::max(1.0, std::abs(b.real())))
    throw err::non_invertible("fs_b_matrix: super-norm body must be positive");
  const Multivector inv = invert(norm);
  const int pe = pt.p() + 1, q = pt.q();
  SuperMatrix out(pt.context(), pe, q);
  for (int i = 0; i < pe; ++i) {
    for (int k = 0; k < pe; ++k)
      out.set(i, k, pt.even_coord(i) * conjugate(pt.even_coord(k)) * inv);
    for (int K = 0; K < q; ++K)
      out.set(i, pe + K, pt.even_coord(i) * conjugate(pt.odd_coord(K)) * inv);
  }
  for (int I = 0; I < q; ++I) {
    for (int k = 0; k < pe; ++k)
      out.set(pe + I, k, pt.odd_coord(I) * conjugate(pt.even_coord(k)) * inv);
    for (int K = 0; K < q; ++K)
      out.set(pe + I, pe + K,
              Complex(0.0, 1.0) *
                  (pt.odd_coord(I) * conjugate(pt.odd_coord(K))) * inv);
  }
  return out;
}

EvenElement fs_potential(const AffineChartPoint& pt) {
  Multivector acc = Multivector::zero(pt.ctx);
  for (const auto& xi : pt.xi) acc = acc + xi * conjugate(xi);
  for (const auto& th : pt.theta)
    acc = acc + Complex(0.0, 1.0) * (th * conjugate(th));
  return EvenElement(acc);
}

EvenElement section_fs_potential(int m, const AffineChartPoint& pt) {
  return super_norm(veronese_map(m, homogeneous(pt)));
}

ProjectivePoint veronese_map(int m, const ProjectivePoint& pt) {
  if (m < 2) throw err::invalid_argument("veronese_map: need m >= 2");
  if (pt.p() != 1 || pt.q() != 2)
    throw err::dimension_mismatch("veronese_map: expects a point of P^{1|2}");
  const AlgebraContext& ctx = pt.context();
  const Multivector& z0 = pt.even_coord(0);
  const Multivector& z1 = pt.even_coord(1);
  const Multivector& t1 = pt.odd_coord(0);
  const Multivector& t2 = pt.odd_coord(1);

  // power tables z0^k, z1^k for k = 0..m
  std::vector<Multivector> p0{Multivector::scalar(ctx, Complex(1.0, 0.0))};
  std::vector<Multivector> p1{Multivector::scalar(ctx, Complex(1.0, 0.0))};
  for (int k = 1; k <= m; ++k) {
    p0.push_back(p0.back() * z0);
    p1.push_back(p1.back() * z1);
  }

  std::vector<Multivector> even;
  for (int l = 0; l <= m; ++l)
    even.push_back(p0[static_cast<std::size_t>(m - l)] * p1[static_cast<std::size_t>(l)]);
  const Multivector t12 = t1 * t2;
  for (int j = 0; j <= m - 2; ++j)
    even.push_back(p0[static_cast<std::size_t>(m - 2 - j)] * p1[static_cast<std::size_t>(j)] * t12);

  std::vector<Multivector> odd;
  for (int j = 0; j <= m - 1; ++j) {
    const Multivector base = p0[static_cast<std::size_t>(m - 1 - j)] * p1[static_cast<std::size_t>(j)];
    odd.push_back(base * t1);
    odd.push_back(base * t2);
  }
  return ProjectivePoint(ctx, std::move(even), std::move(odd));
}

}  // namespace sbal
