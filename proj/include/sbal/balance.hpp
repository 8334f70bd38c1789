#pragma once

#include <array>
#include <vector>

#include "sbal/grassmann.hpp"
#include "sbal/integrate.hpp"

namespace sbal {

using CMatrix = std::vector<std::vector<Complex>>;

// Pullback data of a morphism C^{0|n} -> P^{1|n}: two even coordinates X_0,
// X_1 and n odd coordinates Theta_i, all multivectors in eta, etabar.
struct PointEmbedding {
  AlgebraContext ctx;  // n_pairs = n
  Multivector X0, X1;
  std::vector<Multivector> Theta;

  int n() const { return ctx.n_pairs; }
  void validate() const;

  // the n = 2 family X_I = alpha_I + alpha_tilde_I eta_1 eta_2,
  // Theta_i = sum_j sigma_ij eta_j
  static PointEmbedding quadratic(const std::array<Complex, 2>& alpha,
                                  const std::array<Complex, 2>& alpha_tilde,
                                  const std::array<std::array<Complex, 2>, 2>& sigma);
};

// 2x2 moment matrix: Berezin integral of X_I conj(X_J) over the super-norm.
CMatrix moment_matrix_point(const PointEmbedding& e,
                            PointWeight weight = PointWeight::none);

// odd-block moment entry: Berezin integral of i Theta_k conj(Theta_l) over
// the super-norm
Complex su_block_point(const PointEmbedding& e, int k, int l,
                       PointWeight weight = PointWeight::none);

struct BalanceReport {
  CMatrix even_block;
  CMatrix odd_block;
  double mixed_max = 0.0;       // largest mixed even-odd entry
  double lambda = 0.0;          // fitted mean diagonal, even block
  double eta = 0.0;             // fitted mean diagonal, odd block
  double fit_imag = 0.0;        // largest imaginary part among diagonals
  double residual_even = 0.0;   // max |even_block - lambda I|
  double residual_odd = 0.0;    // max |odd_block - eta I|
  double hermiticity_residual = 0.0;
  bool p_equals_q = false;
  double lambda_plus_eta = 0.0;  // reported when p = q (then lambda = -eta)
};

BalanceReport balance_residual_points(const std::vector<PointEmbedding>& es,
                                      PointWeight weight = PointWeight::none);

struct SolvedPoint {
  PointEmbedding embedding;
  double alpha_tilde_0 = 0.0;
  double alpha_tilde_1 = 0.0;
  double lambda = 0.0;
  BalanceReport report;
};

// Balanced embedding of a single point [1:0] of P^{1|2} with a given linear
// odd part sigma.  Canonical real nonnegative roots are taken for both free
// soul parameters; the result is verified against the exact moment matrix.
SolvedPoint solve_point_balance(const std::array<std::array<Complex, 2>, 2>& sigma);

// positive multipliers in front of each degree-m section, in the basis order
// of veronese_map
struct SectionScaling {
  int m = 2;
  std::vector<double> even_monomial;  // m+1 entries
  std::vector<double> even_top;       // m-1 theta1 theta2 sections
  std::vector<double> odd;            // 2m entries, (j, I) with I inner

  static SectionScaling unit(int m);
  void validate() const;
};

// Moment-map blocks of the degree-m section embedding of P^{1|2}, computed
// with the Calabi-Yau Berezin prescription in the affine chart and the
// chart-invariant radial weight.  Entries are refinement-checked against
// spec.tol.
BalanceReport mv_blocks_cy(int m, const SectionScaling& s,
                           const QuadratureSpec& spec);

struct CySolveResult {
  SectionScaling scaling;
  BalanceReport report;
  bool converged = false;
  int iterations = 0;
  std::vector<double> residual_history;
};

// Fixed-point rescaling c_l <- c_l / sqrt(|diag_l| / block mean), separate
// means per block, until the balance residual drops below balance_tol or
// max_iterations is hit.  Non-convergence is reported, not thrown.
CySolveResult solve_cy_balance(int m, const QuadratureSpec& spec,
                               double balance_tol = 1e-6,
                               int max_iterations = 500);
CySolveResult solve_cy_balance(int m, const QuadratureSpec& spec,
                               const SectionScaling& initial,
                               double balance_tol, int max_iterations);

}  // namespace sbal
