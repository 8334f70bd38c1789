#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sbal/errors.hpp"

namespace sbal {

using Complex = std::complex<double>;

// Complex Grassmann algebra Gamma_{2N} with a distinguished conjugation
// pairing: generator i (0 <= i < N) is paired with generator i+N, written
// eta_i and etabar_i throughout.  Monomials are bitmasks over one machine
// word, so 2N <= 64.
struct AlgebraContext {
  int n_pairs = 1;
  double zero_tolerance = 1e-13;

  int generators() const noexcept { return 2 * n_pairs; }
  // index of eta_i / etabar_i, with i in [1, n_pairs]
  int eta(int i) const { return i - 1; }
  int etabar(int i) const { return i - 1 + n_pairs; }

  void validate() const;
  friend bool operator==(const AlgebraContext& a, const AlgebraContext& b) {
    return a.n_pairs == b.n_pairs;
  }
};

// Sparse element of Gamma_{2N}: map from basis mask (bit b set <=> generator
// b present, factors in ascending index order) to complex coefficient.
// Coefficients with |c| <= zero_tolerance are pruned after every operation;
// values are immutable in practice (all operations return fresh objects).
class Multivector {
 public:
  using TermMap = std::map<std::uint64_t, Complex>;

  explicit Multivector(AlgebraContext ctx) : ctx_(ctx) { ctx_.validate(); }

  static Multivector zero(const AlgebraContext& ctx) { return Multivector(ctx); }
  static Multivector scalar(const AlgebraContext& ctx, Complex c);
  static Multivector generator(const AlgebraContext& ctx, int index);
  // coefficient times the canonically ordered monomial for `mask`
  static Multivector monomial(const AlgebraContext& ctx, std::uint64_t mask,
                              Complex c);

  const AlgebraContext& context() const noexcept { return ctx_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  Complex coefficient(std::uint64_t mask) const;
  Complex body() const { return coefficient(0); }
  Multivector soul() const;

  // parity queries; the zero element passes both
  bool has_even_parity() const;
  bool has_odd_parity() const;
  // 0 = even, 1 = odd, nullopt = mixed (zero reports even)
  std::optional<int> parity() const;

  double max_abs() const;

  Multivector& add_term(std::uint64_t mask, Complex c);  // builder, re-prunes

  friend Multivector operator+(const Multivector& a, const Multivector& b);
  friend Multivector operator-(const Multivector& a, const Multivector& b);
  friend Multivector operator*(const Multivector& a, const Multivector& b);
  friend Multivector operator*(Complex c, const Multivector& a);
  friend Multivector operator*(const Multivector& a, Complex c) { return c * a; }
  Multivector operator-() const { return Complex(-1.0, 0.0) * *this; }

  std::string str() const;  // debug rendering, eta/etabar names

 private:
  void prune();

  AlgebraContext ctx_;
  TermMap terms_;
};

// parity-checked wrappers; construction throws on mixed parity
class EvenElement {
 public:
  explicit EvenElement(Multivector v);
  const Multivector& mv() const noexcept { return v_; }
  operator const Multivector&() const noexcept { return v_; }

 private:
  Multivector v_;
};

class OddElement {
 public:
  explicit OddElement(Multivector v);
  const Multivector& mv() const noexcept { return v_; }
  operator const Multivector&() const noexcept { return v_; }

 private:
  Multivector v_;
};

// ---- operations ----

Multivector mul(const Multivector& a, const Multivector& b);

// Antilinear algebra homomorphism: conjugates coefficients and swaps
// eta_i <-> etabar_i inside each monomial, re-sorting with the Koszul sign.
// No factor reversal: conj(ab) = conj(a) conj(b).  This is the convention
// under which i * eta * etabar is real.
Multivector conjugate(const Multivector& a);

// Inverse of an element with nonzero body, via the finite Neumann series
// b^-1 sum_k (-s/b)^k with a = b + s; the loop stops when a power of the
// soul vanishes exactly.
Multivector invert(const Multivector& a);
EvenElement invert(const EvenElement& a);

Complex body(const Multivector& a);

// Scalar function with its derivative sequence, evaluated at a complex body.
// derivative(k, x) = f^(k)(x); must throw err::analytic_domain when x is
// outside the domain.
struct AnalyticFunction {
  std::string name;
  std::function<Complex(int k, Complex x)> derivative;
};

AnalyticFunction reciprocal_fn();
AnalyticFunction log_fn();
AnalyticFunction exp_fn();
AnalyticFunction pow_fn(double exponent);

// f(body + soul) = sum_k f^(k)(body) soul^k / k!, finite by nilpotency.
EvenElement analytic_apply(const AnalyticFunction& f, const EvenElement& a);

// Iterated left derivatives for the listed generators, leftmost applied
// last, then terms still containing a listed generator are dropped.
Multivector berezin(const Multivector& a, const std::vector<int>& gens);

// [eta_1, etabar_1, eta_2, etabar_2, ...]: the measure order used by every
// point integral in this project.  Any global sign this choice induces
// cancels in the balance conditions, which equate matrices to multiples of
// the identity.
std::vector<int> point_measure_order(const AlgebraContext& ctx);

double max_abs_diff(const Multivector& a, const Multivector& b);

}  // namespace sbal
