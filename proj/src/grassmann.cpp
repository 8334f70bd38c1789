#include "sbal/grassmann.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace sbal {

namespace {

int popcount(std::uint64_t x) { return std::popcount(x); }

// parity of crossings when appending the sorted monomial `b` after the
// sorted monomial `a` and re-sorting into ascending order
int merge_sign(std::uint64_t a, std::uint64_t b) {
  int parity = 0;
  while (b) {
    const int k = std::countr_zero(b);
    parity ^= popcount(a >> (k + 1)) & 1;
    b &= b - 1;
  }
  return parity ? -1 : 1;
}

}  // namespace

void AlgebraContext::validate() const {
  if (n_pairs < 1 || generators() > 64)
    throw err::invalid_argument("AlgebraContext: need 1 <= n_pairs <= 32");
  if (zero_tolerance < 0)
    throw err::invalid_argument("AlgebraContext: zero_tolerance must be >= 0");
}

Multivector Multivector::scalar(const AlgebraContext& ctx, Complex c) {
  Multivector m(ctx);
  m.add_term(0, c);
  return m;
}

Multivector Multivector::generator(const AlgebraContext& ctx, int index) {
  if (index < 0 || index >= ctx.generators())
    throw err::invalid_argument("generator index out of range");
  return monomial(ctx, std::uint64_t{1} << index, Complex(1.0, 0.0));
}

Multivector Multivector::monomial(const AlgebraContext& ctx,
                                  std::uint64_t mask, Complex c) {
  if (ctx.generators() < 64 && (mask >> ctx.generators()) != 0)
    throw err::invalid_argument("monomial mask exceeds generator count");
  Multivector m(ctx);
  m.add_term(mask, c);
  return m;
}

Complex Multivector::coefficient(std::uint64_t mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

Multivector Multivector::soul() const {
  Multivector s(*this);
  s.terms_.erase(0);
  return s;
}

bool Multivector::has_even_parity() const {
  for (const auto& [mask, c] : terms_)
    if (popcount(mask) & 1) return false;
  return true;
}

bool Multivector::has_odd_parity() const {
  for (const auto& [mask, c] : terms_)
    if (!(popcount(mask) & 1)) return false;
  return true;
}

std::optional<int> Multivector::parity() const {
  if (has_even_parity()) return 0;
  if (has_odd_parity()) return 1;
  return std::nullopt;
}

double Multivector::max_abs() const {
  double m = 0.0;
  for (const auto& [mask, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Multivector& Multivector::add_term(std::uint64_t mask, Complex c) {
  auto [it, inserted] = terms_.emplace(mask, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) <= ctx_.zero_tolerance) terms_.erase(it);
  return *this;
}

void Multivector::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= ctx_.zero_tolerance)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Multivector operator+(const Multivector& a, const Multivector& b) {
  if (!(a.ctx_ == b.ctx_)) throw err::context_mismatch("operator+");
  Multivector r(a);
  for (const auto& [mask, c] : b.terms_) r.add_term(mask, c);
  return r;
}

Multivector operator-(const Multivector& a, const Multivector& b) {
  if (!(a.ctx_ == b.ctx_)) throw err::context_mismatch("operator-");
  Multivector r(a);
  for (const auto& [mask, c] : b.terms_) r.add_term(mask, -c);
  return r;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  if (!(a.ctx_ == b.ctx_)) throw err::context_mismatch("operator*");
  Multivector r(a.ctx_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (ma & mb) continue;  // repeated generator, term vanishes
      const double s = static_cast<double>(merge_sign(ma, mb));
      r.add_term(ma | mb, s * ca * cb);
    }
  }
  r.prune();
  return r;
}

Multivector operator*(Complex c, const Multivector& a) {
  Multivector r(a.ctx_);
  for (const auto& [mask, coeff] : a.terms_) r.add_term(mask, c * coeff);
  return r;
}

std::string Multivector::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mask, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    for (int g = 0; g < ctx_.generators(); ++g) {
      if (!(mask >> g & 1)) continue;
      if (g < ctx_.n_pairs)
        os << "*eta" << (g + 1);
      else
        os << "*etabar" << (g - ctx_.n_pairs + 1);
    }
  }
  return os.str();
}

EvenElement::EvenElement(Multivector v) : v_(std::move(v)) {
  if (!v_.has_even_parity())
    throw err::parity_violation("EvenElement from mixed/odd multivector");
}

OddElement::OddElement(Multivector v) : v_(std::move(v)) {
  if (!v_.has_odd_parity())
    throw err::parity_violation("OddElement from mixed/even multivector");
}

Multivector mul(const Multivector& a, const Multivector& b) { return a * b; }

Multivector conjugate(const Multivector& a) {
  const AlgebraContext& ctx = a.context();
  const int n = ctx.n_pairs;
  Multivector r(ctx);
  for (const auto& [mask, c] : a.terms()) {
    // map each factor through eta_i <-> etabar_i, keeping factor order,
    // then count inversions of the mapped index sequence
    std::vector<int> mapped;
    std::uint64_t m = mask;
    while (m) {
      const int g = std::countr_zero(m);
      mapped.push_back(g < n ? g + n : g - n);
      m &= m - 1;
    }
    int inversions = 0;
    for (std::size_t i = 0; i < mapped.size(); ++i)
      for (std::size_t j = i + 1; j < mapped.size(); ++j)
        if (mapped[i] > mapped[j]) ++inversions;
    std::uint64_t new_mask = 0;
    for (int g : mapped) new_mask |= std::uint64_t{1} << g;
    const double s = (inversions & 1) ? -1.0 : 1.0;
    r.add_term(new_mask, s * std::conj(c));
  }
  return r;
}

Multivector invert(const Multivector& a) {
  const Complex b = a.body();
  if (std::abs(b) <= a.context().zero_tolerance)
    throw err::non_invertible("invert");
  const Multivector s = a.soul();
  // a^-1 = sum_k (-1)^k s^k / b^(k+1); terminates because s is nilpotent
  Multivector power = Multivector::scalar(a.context(), Complex(1.0, 0.0) / b);
  Multivector acc = power;
  const Multivector step = (Complex(-1.0, 0.0) / b) * s;
  while (true) {
    power = power * step;
    if (power.is_zero()) break;
    acc = acc + power;
  }
  return acc;
}

EvenElement invert(const EvenElement& a) { return EvenElement(invert(a.mv())); }

Complex body(const Multivector& a) { return a.body(); }

AnalyticFunction reciprocal_fn() {
  return {"reciprocal", [](int k, Complex x) {
            if (std::abs(x) == 0.0)
              throw err::analytic_domain("reciprocal at 0");
            Complex d = Complex(1.0, 0.0) / x;
            for (int j = 1; j <= k; ++j)
              d *= Complex(-static_cast<double>(j), 0.0) / x;
            return d;
          }};
}

AnalyticFunction log_fn() {
  return {"log", [](int k, Complex x) {
            if (std::abs(x) == 0.0) throw err::analytic_domain("log at 0");
            if (k == 0) return std::log(x);
            // f^(k) = (-1)^(k-1) (k-1)! / x^k
            Complex d = Complex(1.0, 0.0) / x;
            for (int j = 1; j < k; ++j)
              d *= Complex(-static_cast<double>(j), 0.0) / x;
            return d;
          }};
}

AnalyticFunction exp_fn() {
  return {"exp", [](int, Complex x) { return std::exp(x); }};
}

AnalyticFunction pow_fn(double exponent) {
  return {"pow", [exponent](int k, Complex x) {
            if (std::abs(x) == 0.0 && exponent < k)
              throw err::analytic_domain("pow at 0");
            Complex factor(1.0, 0.0);
            for (int j = 0; j < k; ++j) factor *= Complex(exponent - j, 0.0);
            return factor * std::pow(x, Complex(exponent - k, 0.0));
          }};
}

EvenElement analytic_apply(const AnalyticFunction& f, const EvenElement& a) {
  const Complex b = a.mv().body();
  const Multivector s = a.mv().soul();
  // sum_k f^(k)(b) s^k / k!
  Multivector power = Multivector::scalar(a.mv().context(), Complex(1.0, 0.0));
  Multivector acc = f.derivative(0, b) * power;
  int k = 0;
  while (true) {
    ++k;
    power = (Complex(1.0 / k, 0.0)) * (power * s);
    if (power.is_zero()) break;
    acc = acc + f.derivative(k, b) * power;
  }
  return EvenElement(acc);
}

Multivector berezin(const Multivector& a, const std::vector<int>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] == gens[j])
        throw err::invalid_argument("berezin: generators must be distinct");
  Multivector cur = a;
  // leftmost listed generator is differentiated last
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
    const int g = *it;
    if (g < 0 || g >= a.context().generators())
      throw err::invalid_argument("berezin: generator index out of range");
    Multivector next(a.context());
    const std::uint64_t bit = std::uint64_t{1} << g;
    const std::uint64_t below = bit - 1;
    for (const auto& [mask, c] : cur.terms()) {
      if (!(mask & bit)) continue;  // left derivative kills the term
      const double s = (popcount(mask & below) & 1) ? -1.0 : 1.0;
      next.add_term(mask & ~bit, s * c);
    }
    cur = next;
  }
  // evaluation at zero for the listed generators
  std::uint64_t listed = 0;
  for (int g : gens) listed |= std::uint64_t{1} << g;
  Multivector out(a.context());
  for (const auto& [mask, c] : cur.terms())
    if (!(mask & listed)) out.add_term(mask, c);
  return out;
}

std::vector<int> point_measure_order(const AlgebraContext& ctx) {
  std::vector<int> order;
  order.reserve(ctx.generators());
  for (int i = 1; i <= ctx.n_pairs; ++i) {
    order.push_back(ctx.eta(i));
    order.push_back(ctx.etabar(i));
  }
  return order;
}

double max_abs_diff(const Multivector& a, const Multivector& b) {
  return (a - b).max_abs();
}

}  // namespace sbal
