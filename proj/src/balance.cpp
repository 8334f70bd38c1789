#include "sbal/balance.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace sbal {

namespace {

Multivector eta12(const AlgebraContext& ctx) {
  // eta_1 eta_2 in canonical order
  const std::uint64_t mask = (std::uint64_t{1} << ctx.eta(1)) |
                             (std::uint64_t{1} << ctx.eta(2));
  return Multivector::monomial(ctx, mask, Complex(1.0, 0.0));
}

Multivector point_denominator(const PointEmbedding& e) {
  Multivector den = e.X0 * conjugate(e.X0) + e.X1 * conjugate(e.X1);
  for (const auto& th : e.Theta)
    den = den + Complex(0.0, 1.0) * (th * conjugate(th));
  const Complex b = den.body();
  if (b.real() <= e.ctx.zero_tolerance ||
      std::abs(b.imag()) > 1e-9 * std::max(1.0, b.real()))
    throw err::non_invertible("point moment: super-norm body must be positive");
  return den;
}

void fit_block(const CMatrix& block, double& fitted, double& residual,
               double& fit_imag) {
  const std::size_t n = block.size();
  Complex mean(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) mean += block[i][i];
  mean /= static_cast<double>(n);
  fitted = mean.real();
  fit_imag = std::abs(mean.imag());
  residual = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex target = (i == j) ? Complex(fitted, 0.0) : Complex(0.0, 0.0);
      residual = std::max(residual, std::abs(block[i][j] - target));
    }
}

double hermiticity(const CMatrix& block) {
  double r = 0.0;
  for (std::size_t i = 0; i < block.size(); ++i)
    for (std::size_t j = 0; j < block.size(); ++j)
      r = std::max(r, std::abs(block[i][j] - std::conj(block[j][i])));
  return r;
}

}  // namespace

void PointEmbedding::validate() const {
  if (ctx.n_pairs < 1) throw err::invalid_argument("PointEmbedding: n >= 1");
  if (!(X0.context() == ctx) || !(X1.context() == ctx))
    throw err::context_mismatch("PointEmbedding");
  if (!X0.has_even_parity() || !X1.has_even_parity())
    throw err::parity_violation("PointEmbedding: X coordinates must be even");
  if (static_cast<int>(Theta.size()) != ctx.n_pairs)
    throw err::dimension_mismatch("PointEmbedding: need n odd coordinates");
  for (const auto& th : Theta) {
    if (!(th.context() == ctx)) throw err::context_mismatch("PointEmbedding");
    if (!th.has_odd_parity())
      throw err::parity_violation("PointEmbedding: Theta must be odd");
  }
  if (std::abs(X0.body()) <= ctx.zero_tolerance &&
      std::abs(X1.body()) <= ctx.zero_tolerance)
    throw err::non_invertible("PointEmbedding: some X_I needs nonzero body");
}

PointEmbedding PointEmbedding::quadratic(
    const std::array<Complex, 2>& alpha,
    const std::array<Complex, 2>& alpha_tilde,
    const std::array<std::array<Complex, 2>, 2>& sigma) {
  AlgebraContext ctx{2, 1e-13};
  const Multivector e12 = eta12(ctx);
  PointEmbedding e{ctx,
                   Multivector::scalar(ctx, alpha[0]) + alpha_tilde[0] * e12,
                   Multivector::scalar(ctx, alpha[1]) + alpha_tilde[1] * e12,
                   {}};
  for (int i = 0; i < 2; ++i) {
    Multivector th = Multivector::zero(ctx);
    for (int j = 0; j < 2; ++j)
      th = th + sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                    Multivector::generator(ctx, ctx.eta(j + 1));
    e.Theta.push_back(th);
  }
  e.validate();
  return e;
}

CMatrix moment_matrix_point(const PointEmbedding& e, PointWeight weight) {
  e.validate();
  const Multivector inv_den = invert(point_denominator(e));
  const Multivector xbar0 = conjugate(e.X0);
  const Multivector xbar1 = conjugate(e.X1);
  const std::array<const Multivector*, 2> x{&e.X0, &e.X1};
  const std::array<const Multivector*, 2> xbar{&xbar0, &xbar1};
  CMatrix m(2, std::vector<Complex>(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          berezin_point_integrate((*x[static_cast<std::size_t>(i)]) *
                                      (*xbar[static_cast<std::size_t>(j)]) * inv_den,
                                  weight);
  return m;
}

Complex su_block_point(const PointEmbedding& e, int k, int l,
                       PointWeight weight) {
  e.validate();
  if (k < 0 || l < 0 || k >= e.n() || l >= e.n())
    throw err::invalid_argument("su_block_point: index out of range");
  const Multivector inv_den = invert(point_denominator(e));
  const Multivector num = Complex(0.0, 1.0) *
                          (e.Theta[static_cast<std::size_t>(k)] *
                           conjugate(e.Theta[static_cast<std::size_t>(l)]));
  return berezin_point_integrate(num * inv_den, weight);
}

BalanceReport balance_residual_points(const std::vector<PointEmbedding>& es,
                                      PointWeight weight) {
  if (es.empty())
    throw err::invalid_argument("balance_residual_points: empty point list");
  const int n = es.front().n();
  for (const auto& e : es)
    if (e.n() != n)
      throw err::dimension_mismatch("balance_residual_points: mixed n");

  CMatrix even(2, std::vector<Complex>(2, Complex(0.0, 0.0)));
  CMatrix odd(static_cast<std::size_t>(n),
              std::vector<Complex>(static_cast<std::size_t>(n), Complex(0.0, 0.0)));
  double mixed = 0.0;
  for (const auto& e : es) {
    const CMatrix m = moment_matrix_point(e, weight);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        even[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    const Multivector inv_den = invert(point_denominator(e));
    const std::array<const Multivector*, 2> x{&e.X0, &e.X1};
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l)
        odd[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] +=
            su_block_point(e, k, l, weight);
      for (int i = 0; i < 2; ++i) {
        const Complex a = berezin_point_integrate(
            (*x[static_cast<std::size_t>(i)]) *
                conjugate(e.Theta[static_cast<std::size_t>(k)]) * inv_den,
            weight);
        const Complex b = berezin_point_integrate(
            e.Theta[static_cast<std::size_t>(k)] *
                conjugate(*x[static_cast<std::size_t>(i)]) * inv_den,
            weight);
        mixed = std::max(mixed, std::max(std::abs(a), std::abs(b)));
      }
    }
  }

  BalanceReport r;
  r.even_block = even;
  r.odd_block = odd;
  r.mixed_max = mixed;
  double imag_e = 0.0, imag_o = 0.0;
  fit_block(even, r.lambda, r.residual_even, imag_e);
  fit_block(odd, r.eta, r.residual_odd, imag_o);
  r.fit_imag = std::max(imag_e, imag_o);
  r.hermiticity_residual = std::max(hermiticity(even), hermiticity(odd));
  r.p_equals_q = (n == 2);
  r.lambda_plus_eta = r.lambda + r.eta;
  return r;
}

SolvedPoint solve_point_balance(
    const std::array<std::array<Complex, 2>, 2>& sigma) {
  const Complex det = sigma[0][0] * sigma[1][1] - sigma[0][1] * sigma[1][0];
  const double det_sq = std::norm(det);  // |det sigma|^2 = det(sigma sigma^dag)
  // balance forces |alpha_tilde_1|^2 = |det sigma|^2; the remaining
  // condition Re(alpha_tilde_0^2) = |det sigma|^2 leaves alpha_tilde_0 as a
  // canonical gauge choice.  Real nonnegative roots taken for both.
  const double at0 = std::sqrt(det_sq);
  const double at1 = std::sqrt(det_sq);
  PointEmbedding e = PointEmbedding::quadratic(
      {Complex(1.0, 0.0), Complex(0.0, 0.0)},
      {Complex(at0, 0.0), Complex(at1, 0.0)}, sigma);
  SolvedPoint s{e, at0, at1, 0.0,
                balance_residual_points({e}, PointWeight::none)};
  s.lambda = s.report.lambda;
  return s;
}

// ---- Calabi-Yau section blocks ----

SectionScaling SectionScaling::unit(int m) {
  SectionScaling s;
  s.m = m;
  s.even_monomial.assign(static_cast<std::size_t>(m + 1), 1.0);
  s.even_top.assign(static_cast<std::size_t>(m - 1), 1.0);
  s.odd.assign(static_cast<std::size_t>(2 * m), 1.0);
  return s;
}

void SectionScaling::validate() const {
  if (m < 2) throw err::invalid_argument("SectionScaling: need m >= 2");
  if (even_monomial.size() != static_cast<std::size_t>(m + 1) ||
      even_top.size() != static_cast<std::size_t>(m - 1) ||
      odd.size() != static_cast<std::size_t>(2 * m))
    throw err::dimension_mismatch("SectionScaling: wrong list lengths");
  for (double c : even_monomial)
    if (!(c > 0)) throw err::invalid_argument("SectionScaling: c > 0 required");
  for (double c : even_top)
    if (!(c > 0)) throw err::invalid_argument("SectionScaling: c > 0 required");
  for (double c : odd)
    if (!(c > 0)) throw err::invalid_argument("SectionScaling: c > 0 required");
}

namespace {

struct CySections {
  std::vector<Multivector> even;       // scaled section values at z
  std::vector<Multivector> even_conj;
  std::vector<Multivector> odd;
  std::vector<Multivector> odd_conj;
};

// affine chart values: even w^l and w^j theta1 theta2, odd w^j theta_I
CySections cy_sections_at(const AlgebraContext& ctx, int m,
                          const SectionScaling& s, Complex z) {
  CySections out;
  std::vector<Complex> zp(static_cast<std::size_t>(m + 1), Complex(1.0, 0.0));
  for (int k = 1; k <= m; ++k) zp[static_cast<std::size_t>(k)] = zp[static_cast<std::size_t>(k - 1)] * z;

  for (int l = 0; l <= m; ++l)
    out.even.push_back(Multivector::scalar(
        ctx, s.even_monomial[static_cast<std::size_t>(l)] * zp[static_cast<std::size_t>(l)]));
  const std::uint64_t m12 = (std::uint64_t{1} << ctx.eta(1)) |
                            (std::uint64_t{1} << ctx.eta(2));
  for (int j = 0; j <= m - 2; ++j)
    out.even.push_back(Multivector::monomial(
        ctx, m12, s.even_top[static_cast<std::size_t>(j)] * zp[static_cast<std::size_t>(j)]));
  for (int j = 0; j <= m - 1; ++j)
    for (int I = 1; I <= 2; ++I)
      out.odd.push_back(
          s.odd[static_cast<std::size_t>(2 * j + I - 1)] * zp[static_cast<std::size_t>(j)] *
          Multivector::generator(ctx, ctx.eta(I)));

  for (const auto& e : out.even) out.even_conj.push_back(conjugate(e));
  for (const auto& o : out.odd) out.odd_conj.push_back(conjugate(o));
  return out;
}

Multivector cy_denominator(const AlgebraContext& ctx, const CySections& s) {
  Multivector den = Multivector::zero(ctx);
  for (std::size_t l = 0; l < s.even.size(); ++l)
    den = den + s.even[l] * s.even_conj[l];
  for (std::size_t l = 0; l < s.odd.size(); ++l)
    den = den + Complex(0.0, 1.0) * (s.odd[l] * s.odd_conj[l]);
  return den;
}

struct CyBlockSums {
  CMatrix even;
  CMatrix odd;
  CMatrix mixed;  // even rows x odd columns
};

CyBlockSums cy_block_sums(int m, const SectionScaling& s, int n_radial,
                          int n_angular) {
  // exact-zero pruning only: section coefficients at large |z| fall below
  // any absolute threshold and must not be truncated
  const AlgebraContext ctx{2, 0.0};
  const std::size_t ne = static_cast<std::size_t>(2 * m);
  const std::size_t no = static_cast<std::size_t>(2 * m);
  CyBlockSums sums{CMatrix(ne, std::vector<Complex>(ne, Complex(0.0, 0.0))),
                   CMatrix(no, std::vector<Complex>(no, Complex(0.0, 0.0))),
                   CMatrix(ne, std::vector<Complex>(no, Complex(0.0, 0.0)))};
  std::vector<double> t, w;
  gauss_legendre_01(n_radial, t, w);
  const double dphi = 2.0 * std::numbers::pi / n_angular;
  for (int i = 0; i < n_radial; ++i) {
    const double ti = t[static_cast<std::size_t>(i)];
    const double r = std::sqrt(ti / (1.0 - ti));
    const double jac = w[static_cast<std::size_t>(i)] * dphi * 0.5 /
                       ((1.0 - ti) * (1.0 - ti));
    for (int j = 0; j < n_angular; ++j) {
      const double phi = dphi * j;
      const Complex z(r * std::cos(phi), r * std::sin(phi));
      const CySections sec = cy_sections_at(ctx, m, s, z);
      const Multivector inv_den = invert(cy_denominator(ctx, sec));
      for (std::size_t a = 0; a < ne; ++a)
        for (std::size_t b = 0; b < ne; ++b)
          sums.even[a][b] += jac * cy_extract(sec.even[a] * sec.even_conj[b] * inv_den);
      for (std::size_t a = 0; a < no; ++a)
        for (std::size_t b = 0; b < no; ++b)
          sums.odd[a][b] += jac * Complex(0.0, 1.0) *
                            cy_extract(sec.odd[a] * sec.odd_conj[b] * inv_den);
      for (std::size_t a = 0; a < ne; ++a)
        for (std::size_t b = 0; b < no; ++b)
          sums.mixed[a][b] += jac * cy_extract(sec.even[a] * sec.odd_conj[b] * inv_den);
    }
  }
  return sums;
}

double block_delta(const CMatrix& a, const CMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

// diagonal entries only, single quadrature level; the inner loop of the
// balancing iteration
void cy_diagonals(int m, const SectionScaling& s, int n_radial, int n_angular,
                  std::vector<double>& even_diag, std::vector<double>& odd_diag) {
  const AlgebraContext ctx{2, 0.0};
  even_diag.assign(static_cast<std::size_t>(2 * m), 0.0);
  odd_diag.assign(static_cast<std::size_t>(2 * m), 0.0);
  std::vector<double> t, w;
  gauss_legendre_01(n_radial, t, w);
  const double dphi = 2.0 * std::numbers::pi / n_angular;
  for (int i = 0; i < n_radial; ++i) {
    const double ti = t[static_cast<std::size_t>(i)];
    const double r = std::sqrt(ti / (1.0 - ti));
    const double jac = w[static_cast<std::size_t>(i)] * dphi * 0.5 /
                       ((1.0 - ti) * (1.0 - ti));
    for (int j = 0; j < n_angular; ++j) {
      const double phi = dphi * j;
      const Complex z(r * std::cos(phi), r * std::sin(phi));
      const CySections sec = cy_sections_at(ctx, m, s, z);
      const Multivector inv_den = invert(cy_denominator(ctx, sec));
      for (std::size_t a = 0; a < sec.even.size(); ++a)
        even_diag[a] += jac * (cy_extract(sec.even[a] * sec.even_conj[a] * inv_den)).real();
      for (std::size_t a = 0; a < sec.odd.size(); ++a)
        odd_diag[a] += jac * (Complex(0.0, 1.0) *
                              cy_extract(sec.odd[a] * sec.odd_conj[a] * inv_den))
                                 .real();
    }
  }
}

}  // namespace

BalanceReport mv_blocks_cy(int m, const SectionScaling& s,
                           const QuadratureSpec& spec) {
  s.validate();
  if (s.m != m) throw err::dimension_mismatch("mv_blocks_cy: scaling.m != m");
  spec.validate();
  CyBlockSums prev = cy_block_sums(m, s, spec.radial, spec.angular);
  CyBlockSums cur = prev;
  bool ok = false;
  double delta = 0.0;
  for (int k = 1; k <= spec.max_doublings; ++k) {
    cur = cy_block_sums(m, s, spec.radial << k, spec.angular << k);
    delta = std::max({block_delta(cur.even, prev.even),
                      block_delta(cur.odd, prev.odd),
                      block_delta(cur.mixed, prev.mixed)});
    if (delta <= spec.tol) {
      ok = true;
      break;
    }
    prev = cur;
  }
  if (!ok) {
    std::ostringstream os;
    os << "mv_blocks_cy: entry refinement delta " << delta
       << " above tolerance " << spec.tol;
    throw err::quadrature_tolerance(os.str());
  }

  BalanceReport r;
  r.even_block = cur.even;
  r.odd_block = cur.odd;
  for (const auto& row : cur.mixed)
    for (const Complex& v : row) r.mixed_max = std::max(r.mixed_max, std::abs(v));
  double imag_e = 0.0, imag_o = 0.0;
  fit_block(cur.even, r.lambda, r.residual_even, imag_e);
  fit_block(cur.odd, r.eta, r.residual_odd, imag_o);
  r.fit_imag = std::max(imag_e, imag_o);
  r.hermiticity_residual = std::max(hermiticity(cur.even), hermiticity(cur.odd));
  r.p_equals_q = true;  // the section counts are 2m | 2m for every m
  r.lambda_plus_eta = r.lambda + r.eta;
  return r;
}

CySolveResult solve_cy_balance(int m, const QuadratureSpec& spec,
                               const SectionScaling& initial,
                               double balance_tol, int max_iterations) {
  initial.validate();
  if (initial.m != m)
    throw err::dimension_mismatch("solve_cy_balance: scaling.m != m");
  spec.validate();

  SectionScaling s = initial;
  CySolveResult out;
  std::vector<double> de, dJ;
  for (int iter = 0; iter <= max_iterations; ++iter) {
    cy_diagonals(m, s, spec.radial, spec.angular, de, dJ);
    double lambda = 0.0, eta = 0.0;
    for (double v : de) lambda += v;
    lambda /= static_cast<double>(de.size());
    for (double v : dJ) eta += v;
    eta /= static_cast<double>(dJ.size());
    double resid = 0.0;
    for (double v : de) resid = std::max(resid, std::abs(v - lambda));
    for (double v : dJ) resid = std::max(resid, std::abs(v - eta));
    out.residual_history.push_back(resid);
    out.iterations = iter;
    if (resid <= balance_tol) {
      out.converged = true;
      break;
    }
    if (iter == max_iterations) break;

    double mean_e = 0.0, mean_o = 0.0;
    for (double v : de) mean_e += std::abs(v);
    mean_e /= static_cast<double>(de.size());
    for (double v : dJ) mean_o += std::abs(v);
    mean_o /= static_cast<double>(dJ.size());
    auto rescale = [](double c, double diag, double mean) {
      const double f = std::sqrt(std::abs(diag) / mean);
      return c / std::clamp(f, 0.1, 10.0);  // step clamp, numerical guard
    };
    for (int l = 0; l <= m; ++l)
      s.even_monomial[static_cast<std::size_t>(l)] = rescale(
          s.even_monomial[static_cast<std::size_t>(l)], de[static_cast<std::size_t>(l)], mean_e);
    for (int j = 0; j <= m - 2; ++j)
      s.even_top[static_cast<std::size_t>(j)] =
          rescale(s.even_top[static_cast<std::size_t>(j)],
                  de[static_cast<std::size_t>(m + 1 + j)], mean_e);
    for (int l = 0; l < 2 * m; ++l)
      s.odd[static_cast<std::size_t>(l)] = rescale(
          s.odd[static_cast<std::size_t>(l)], dJ[static_cast<std::size_t>(l)], mean_o);

    // overall scale is gauge; normalize to geometric mean 1 for stable output
    double log_sum = 0.0;
    int count = 0;
    for (double c : s.even_monomial) log_sum += std::log(c), ++count;
    for (double c : s.even_top) log_sum += std::log(c), ++count;
    for (double c : s.odd) log_sum += std::log(c), ++count;
    const double scale = std::exp(log_sum / count);
    for (double& c : s.even_monomial) c /= scale;
    for (double& c : s.even_top) c /= scale;
    for (double& c : s.odd) c /= scale;
  }

  out.scaling = s;
  out.report = mv_blocks_cy(m, s, spec);
  return out;
}

CySolveResult solve_cy_balance(int m, const QuadratureSpec& spec,
                               double balance_tol, int max_iterations) {
  return solve_cy_balance(m, spec, SectionScaling::unit(m), balance_tol,
                          max_iterations);
}

}  // namespace sbal
