#ifndef CHARP_OPERATORS_HPP
#define CHARP_OPERATORS_HPP

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "charp/tower.hpp"

namespace charp {

/// Linear differential operator sum c_i ∂^i with constant coefficients,
/// stored sparsely by ascending order.  The p-polynomial annihilators are the
/// special case with support in {0} ∪ {p^j}; they use the same type since the
/// search that produces them may need the order-0 term.
class ConstOp {
 public:
  ConstOp() = default;
  explicit ConstOp(std::vector<std::pair<std::size_t, Elem>> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [o, c] : terms) {
      if (c.is_zero()) continue;
      if (!t_.empty() && t_.back().first == o)
        t_.back().second = t_.back().second + c;
      else
        t_.emplace_back(o, c);
    }
    t_.erase(std::remove_if(t_.begin(), t_.end(),
                            [](const auto& e) { return e.second.is_zero(); }),
             t_.end());
  }

  bool is_zero() const { return t_.empty(); }
  std::size_t order() const {
    assert(!t_.empty());
    return t_.back().first;
  }
  const std::vector<std::pair<std::size_t, Elem>>& terms() const { return t_; }

  Elem coeff(std::size_t o) const {
    for (const auto& [i, c] : t_)
      if (i == o) return c;
    assert(!t_.empty());
    return t_.front().second.zero_like();
  }

  /// Evaluate sum c_i ∂^i(e).  Coefficients may live in a prefix of t (an
  /// operator found over F_p(X) can be applied inside a solution tower).
  Elem apply(const Tower& t, const Elem& e) const {
    DerivChain chain(t, e);
    Elem acc = t.zero();
    for (const auto& [o, c] : t_) acc = acc + t.lift(c) * chain.at(o);
    return acc;
  }

  /// The operator as a commutative polynomial in T = ∂ (valid because all
  /// coefficients are constants).
  Poly<Elem> as_poly(const Elem& unit) const {
    Poly<Elem> r = Poly<Elem>::zero(unit);
    for (const auto& [o, c] : t_) r = r + Poly<Elem>::monomial(c, o, unit);
    return r;
  }
  static ConstOp from_poly(const Poly<Elem>& p) {
    std::vector<std::pair<std::size_t, Elem>> terms;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
      if (!p.coeffs()[i].is_zero()) terms.emplace_back(i, p.coeffs()[i]);
    return ConstOp(std::move(terms));
  }

  /// True when the support is {0} ∪ {p^j} (the generalized p-polynomial form).
  bool is_p_polynomial(std::uint64_t p) const {
    for (const auto& [o, c] : t_) {
      (void)c;
      if (o == 0) continue;
      std::uint64_t q = 1;
      while (q < o) q *= p;
      if (q != o) return false;
    }
    return true;
  }

 private:
  std::vector<std::pair<std::size_t, Elem>> t_;
};

/// Annihilators returned by the dependence search: a ConstOp whose support
/// lies in {0} ∪ {p^j}.
using PPoly = ConstOp;

/// Skew (Ore) operator sum a_i ∂^i with coefficients in the tower field and
/// the commutation rule ∂·a = a·∂ + ∂(a).  Dense, lowest order first.
class SkewOp {
 public:
  explicit SkewOp(Elem unit) : c_{}, unit_(std::move(unit)) {}
  SkewOp(std::vector<Elem> coeffs, Elem unit)
      : c_(std::move(coeffs)), unit_(std::move(unit)) {
    trim();
  }
  static SkewOp zero(const Elem& unit) { return SkewOp(unit); }
  static SkewOp monomial(const Elem& a, std::size_t k, const Elem& unit) {
    std::vector<Elem> v(k + 1, unit.zero_like());
    v[k] = a;
    return SkewOp(std::move(v), unit);
  }

  bool is_zero() const { return c_.empty(); }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Elem>& coeffs() const { return c_; }
  const Elem& unit() const { return unit_; }
  Elem coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : unit_.zero_like();
  }
  const Elem& lead() const {
    assert(!c_.empty());
    return c_.back();
  }

  friend SkewOp operator+(const SkewOp& a, const SkewOp& b) {
    std::vector<Elem> r;
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.push_back(a.coeff(i) + b.coeff(i));
    return SkewOp(std::move(r), a.unit_);
  }
  friend SkewOp operator-(const SkewOp& a, const SkewOp& b) {
    std::vector<Elem> r;
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.push_back(a.coeff(i) - b.coeff(i));
    return SkewOp(std::move(r), a.unit_);
  }
  SkewOp scaled(const Elem& s) const {
    std::vector<Elem> r;
    r.reserve(c_.size());
    for (const Elem& a : c_) r.push_back(a * s);
    return SkewOp(std::move(r), unit_);
  }

  friend bool operator==(const SkewOp& a, const SkewOp& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const SkewOp& a, const SkewOp& b) { return !(a == b); }

  Elem apply(const Tower& t, const Elem& e) const {
    DerivChain chain(t, e);
    Elem acc = t.zero();
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) acc = acc + t.lift(c_[i]) * chain.at(i);
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Elem> c_;
  Elem unit_;
};

/// ∂ ∘ b as an operator: sum (∂b_j) ∂^j + b_j ∂^{j+1}.
inline SkewOp skew_derive_compose(const Tower& t, const SkewOp& b) {
  std::vector<Elem> r(b.coeffs().size() + 1, b.unit().zero_like());
  for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
    r[j] = r[j] + t.derive(b.coeffs()[j]);
    r[j + 1] = r[j + 1] + b.coeffs()[j];
  }
  return SkewOp(std::move(r), b.unit());
}

/// Operator composition a ∘ b under ∂·c = c·∂ + ∂(c).
inline SkewOp skew_mul(const Tower& t, const SkewOp& a, const SkewOp& b) {
  if (a.is_zero() || b.is_zero()) return SkewOp::zero(a.unit());
  SkewOp acc = SkewOp::zero(a.unit());
  SkewOp di_b = b;  // ∂^i ∘ b
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (!a.coeffs()[i].is_zero()) acc = acc + di_b.scaled(a.coeffs()[i]);
    if (i + 1 < a.coeffs().size()) di_b = skew_derive_compose(t, di_b);
  }
  return acc;
}

/// a = q·b + r with order(r) < order(b); right Euclidean division.
inline std::pair<SkewOp, SkewOp> skew_right_divmod(const Tower& t,
                                                   const SkewOp& a,
                                                   const SkewOp& b) {
  if (b.is_zero()) throw DivisionByZero("skew division by the zero operator");
  SkewOp q = SkewOp::zero(a.unit()), r = a;
  const Elem lb = b.lead().inv();
  while (!r.is_zero() && r.order() >= b.order()) {
    std::size_t d = static_cast<std::size_t>(r.order() - b.order());
    SkewOp m = SkewOp::monomial(r.lead() * lb, d, a.unit());
    q = q + m;
    r = r - skew_mul(t, m, b);
  }
  return {q, r};
}

}  // namespace charp

#endif  // CHARP_OPERATORS_HPP
