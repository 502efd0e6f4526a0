#ifndef CHARP_POLY_HPP
#define CHARP_POLY_HPP

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

#include "charp/errors.hpp"

namespace charp {

/// Dense univariate polynomial over an abstract field F, lowest degree first.
/// The zero polynomial has an empty coefficient list; otherwise the leading
/// coefficient is nonzero.  Every instance carries `unit`, the field's one,
/// so that zero polynomials still know their coefficient field.
template <class F>
class Poly {
 public:
  explicit Poly(F unit) : unit_(std::move(unit)) {}
  Poly(std::vector<F> coeffs, F unit) : c_(std::move(coeffs)), unit_(std::move(unit)) {
    trim();
  }

  static Poly zero(const F& unit) { return Poly(unit); }
  static Poly one(const F& unit) { return Poly({unit}, unit); }
  static Poly constant(const F& a, const F& unit) { return Poly({a}, unit); }
  static Poly x(const F& unit) { return Poly({unit.zero_like(), unit}, unit); }
  /// c * X^k
  static Poly monomial(const F& c, std::size_t k, const F& unit) {
    std::vector<F> v(k + 1, unit.zero_like());
    v[k] = c;
    return Poly(std::move(v), unit);
  }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const F& unit() const { return unit_; }
  const std::vector<F>& coeffs() const { return c_; }
  F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : unit_.zero_like(); }
  const F& lead() const {
    assert(!c_.empty());
    return c_.back();
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<F> r;
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.push_back(a.coeff(i) + b.coeff(i));
    return Poly(std::move(r), a.unit_);
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<F> r;
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.push_back(a.coeff(i) - b.coeff(i));
    return Poly(std::move(r), a.unit_);
  }
  Poly operator-() const {
    std::vector<F> r;
    r.reserve(c_.size());
    for (const F& a : c_) r.push_back(-a);
    return Poly(std::move(r), unit_);
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return zero(a.unit_);
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, a.unit_.zero_like());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r), a.unit_);
  }
  Poly scaled(const F& s) const {
    std::vector<F> r;
    r.reserve(c_.size());
    for (const F& a : c_) r.push_back(a * s);
    return Poly(std::move(r), unit_);
  }
  /// multiply by X^k
  Poly shifted(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<F> r(c_.size() + k, unit_.zero_like());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
    return Poly(std::move(r), unit_);
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  F eval(const F& x) const {
    F acc = unit_.zero_like();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// Evaluate at a point in any ring E containing the coefficients, with an
  /// embedding map for the coefficients.
  template <class E, class Embed>
  E eval_mapped(const E& x, Embed embed) const {
    E acc = x.zero_like();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + embed(c_[i]);
    return acc;
  }

  Poly monic() const {
    assert(!is_zero());
    if (lead().is_one()) return *this;
    return scaled(lead().inv());
  }

  /// Coefficientwise i*a_i shift; in characteristic p the X^p term drops out.
  Poly formal_derivative() const {
    if (c_.size() <= 1) return zero(unit_);
    std::vector<F> r;
    r.reserve(c_.size() - 1);
    F k = unit_.zero_like();
    for (std::size_t i = 1; i < c_.size(); ++i) {
      k = k + unit_;  // k == i in the prime field
      r.push_back(c_[i] * k);
    }
    return Poly(std::move(r), unit_);
  }

  friend std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    Poly q = zero(a.unit_), r = a;
    const F lb = b.lead().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      std::size_t d = static_cast<std::size_t>(r.degree() - b.degree());
      F c = r.lead() * lb;
      q = q + monomial(c, d, a.unit_);
      r = r - b.shifted(d).scaled(c);
    }
    return {q, r};
  }

  /// Exact quotient; throws if the division leaves a remainder.
  friend Poly poly_exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw PreconditionViolated("inexact polynomial division");
    return q;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<F> c_;
  F unit_;
};

/// Monic remainder sequence; fine when coefficient arithmetic is cheap.
/// Nested rational coefficient fields get a fraction-free overload instead.
template <class F>
Poly<F> poly_gcd(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() && b.is_zero())
    throw PreconditionViolated("gcd of two zero polynomials");
  Poly<F> u = a, v = b;
  while (!v.is_zero()) {
    u = poly_divmod(u, v).second;
    std::swap(u, v);
    if (!u.is_zero()) u = u.monic();
  }
  return u.monic();
}

template <class F>
Poly<F> poly_lcm(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<F>::zero(a.unit());
  return poly_exact_div(a * b, poly_gcd(a, b)).monic();
}

}  // namespace charp

#endif  // CHARP_POLY_HPP
