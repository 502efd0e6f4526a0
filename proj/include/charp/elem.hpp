#ifndef CHARP_ELEM_HPP
#define CHARP_ELEM_HPP

#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>

#include "charp/fp.hpp"
#include "charp/poly.hpp"

namespace charp {

namespace detail {
struct ElemRep;  // defined after Elem (Poly<Elem> needs a complete Elem)
}

/// Element of a tower field, as a recursive reduced rational function.
///
/// Height 0 is a scalar in F_p.  Height h > 0 is num/den where num and den are
/// dense polynomials in the h-th tower generator whose coefficients are Elems
/// of height h-1.  Invariants kept at every step: gcd(num, den) = 1, den is
/// monic, zero is 0/1.  Structural equality is field equality.
class Elem {
 public:
  Elem() = default;  // invalid placeholder
  explicit Elem(Fp s) : height_(0), s_(s) {}
  Elem(const Poly<Elem>& num, const Poly<Elem>& den);

  /// Trusted constructor: inputs already canonical.
  static Elem raw(Poly<Elem> num, Poly<Elem> den);

  int height() const { return height_; }
  std::uint64_t p() const;

  const Fp& scalar() const {
    assert(height_ == 0);
    return s_;
  }
  const Poly<Elem>& num() const;
  const Poly<Elem>& den() const;

  bool is_zero() const;
  bool is_one() const;

  Elem zero_like() const;
  Elem one_like() const;
  /// The scalar c embedded at this element's height.
  Elem scalar_like(Fp c) const;
  Elem from_int(std::int64_t v) const { return scalar_like(Fp(v, p())); }

  /// This element wrapped one level up (a degenerate fraction).
  Elem lifted() const;

  friend Elem operator+(const Elem& a, const Elem& b);
  friend Elem operator-(const Elem& a, const Elem& b) { return a + (-b); }
  Elem operator-() const;
  friend Elem operator*(const Elem& a, const Elem& b);
  Elem inv() const;
  friend Elem operator/(const Elem& a, const Elem& b) { return a * b.inv(); }
  Elem pow(std::int64_t e) const;

  friend bool operator==(const Elem& a, const Elem& b);
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

  /// True when every nested denominator is 1 (a "polynomial" element).
  bool is_integral() const;

  /// The value as an F_p scalar, when the element is degenerate at all levels.
  std::optional<Fp> as_prime_scalar() const;

 private:
  int height_ = 0;
  Fp s_;
  std::shared_ptr<const detail::ElemRep> r_;
};

namespace detail {
struct ElemRep {
  Poly<Elem> num, den;
};
}  // namespace detail

/// Fraction-free subresultant gcd; see the definition at the bottom of this
/// header.  Declared here so the canonicalizing constructor picks it over the
/// generic remainder sequence.
inline Poly<Elem> poly_gcd(const Poly<Elem>& a, const Poly<Elem>& b);

inline Elem::Elem(const Poly<Elem>& num, const Poly<Elem>& den) {
  if (den.is_zero()) throw DivisionByZero("zero denominator in tower element");
  height_ = num.unit().height() + 1;
  if (num.is_zero()) {
    r_ = std::make_shared<const detail::ElemRep>(
        detail::ElemRep{num, Poly<Elem>::one(num.unit())});
    return;
  }
  Poly<Elem> n = num, d = den;
  if (!d.is_one()) {
    Poly<Elem> g = poly_gcd(n, d);
    if (!g.is_one()) {
      n = poly_exact_div(n, g);
      d = poly_exact_div(d, g);
    }
  }
  if (!d.lead().is_one()) {
    Elem li = d.lead().inv();
    n = n.scaled(li);
    d = d.scaled(li);
  }
  r_ = std::make_shared<const detail::ElemRep>(
      detail::ElemRep{std::move(n), std::move(d)});
}

inline Elem Elem::raw(Poly<Elem> num, Poly<Elem> den) {
  Elem e;
  e.height_ = num.unit().height() + 1;
  e.r_ = std::make_shared<const detail::ElemRep>(
      detail::ElemRep{std::move(num), std::move(den)});
  return e;
}

inline std::uint64_t Elem::p() const {
  return height_ == 0 ? s_.modulus() : r_->num.unit().p();
}

inline const Poly<Elem>& Elem::num() const {
  assert(height_ > 0);
  return r_->num;
}
inline const Poly<Elem>& Elem::den() const {
  assert(height_ > 0);
  return r_->den;
}

inline bool Elem::is_zero() const {
  return height_ == 0 ? s_.is_zero() : r_->num.is_zero();
}
inline bool Elem::is_one() const {
  return height_ == 0 ? s_.is_one() : (r_->num.is_one() && r_->den.is_one());
}

inline Elem Elem::zero_like() const {
  if (height_ == 0) return Elem(s_.zero_like());
  const Elem& u = r_->num.unit();
  return raw(Poly<Elem>::zero(u), Poly<Elem>::one(u));
}
inline Elem Elem::one_like() const {
  if (height_ == 0) return Elem(s_.one_like());
  const Elem& u = r_->num.unit();
  return raw(Poly<Elem>::one(u), Poly<Elem>::one(u));
}
inline Elem Elem::scalar_like(Fp c) const {
  if (height_ == 0) return Elem(c);
  const Elem& u = r_->num.unit();
  Elem inner = u.scalar_like(c);
  if (inner.is_zero()) return zero_like();
  return raw(Poly<Elem>::constant(inner, u), Poly<Elem>::one(u));
}

inline Elem Elem::lifted() const {
  Elem unit = one_like();
  if (is_zero()) return raw(Poly<Elem>::zero(unit), Poly<Elem>::one(unit));
  return raw(Poly<Elem>::constant(*this, unit), Poly<Elem>::one(unit));
}

namespace detail {
// monic-denominator scaling of an already reduced fraction
inline Elem reduced_monic(Poly<Elem> num, Poly<Elem> den) {
  if (num.is_zero()) return Elem::raw(std::move(num), Poly<Elem>::one(den.unit()));
  if (!den.lead().is_one()) {
    Elem li = den.lead().inv();
    num = num.scaled(li);
    den = den.scaled(li);
  }
  return Elem::raw(std::move(num), std::move(den));
}
}  // namespace detail

inline Elem operator+(const Elem& a, const Elem& b) {
  assert(a.height_ == b.height_);
  if (a.height_ == 0) return Elem(a.s_ + b.s_);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const Poly<Elem>&n1 = a.r_->num, &d1 = a.r_->den;
  const Poly<Elem>&n2 = b.r_->num, &d2 = b.r_->den;
  if (d1 == d2) {
    if (d1.is_one()) return Elem::raw(n1 + n2, d1);
    return Elem(n1 + n2, d1);
  }
  // Knuth 4.5.1: reduce by gcd of the denominators only
  Poly<Elem> g = poly_gcd(d1, d2);
  if (g.is_one())
    return detail::reduced_monic(n1 * d2 + n2 * d1, d1 * d2);
  Poly<Elem> d2r = poly_exact_div(d2, g);
  Poly<Elem> t = n1 * d2r + n2 * poly_exact_div(d1, g);
  Poly<Elem> den = d1 * d2r;
  if (t.is_zero()) return a.zero_like();
  Poly<Elem> h = poly_gcd(t, g);
  if (!h.is_one()) {
    t = poly_exact_div(t, h);
    den = poly_exact_div(den, h);
  }
  return detail::reduced_monic(std::move(t), std::move(den));
}

inline Elem Elem::operator-() const {
  if (height_ == 0) return Elem(-s_);
  if (is_zero()) return *this;
  return raw(-r_->num, r_->den);
}

inline Elem operator*(const Elem& a, const Elem& b) {
  assert(a.height_ == b.height_);
  if (a.height_ == 0) return Elem(a.s_ * b.s_);
  if (a.is_zero() || b.is_zero()) return a.zero_like();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  // cross-cancel before multiplying; the result is then already reduced
  Poly<Elem> n1 = a.r_->num, d2 = b.r_->den;
  if (!d2.is_one()) {
    Poly<Elem> g = poly_gcd(n1, d2);
    if (!g.is_one()) {
      n1 = poly_exact_div(n1, g);
      d2 = poly_exact_div(d2, g);
    }
  }
  Poly<Elem> n2 = b.r_->num, d1 = a.r_->den;
  if (!d1.is_one()) {
    Poly<Elem> g = poly_gcd(n2, d1);
    if (!g.is_one()) {
      n2 = poly_exact_div(n2, g);
      d1 = poly_exact_div(d1, g);
    }
  }
  return detail::reduced_monic(n1 * n2, d1 * d2);
}

inline Elem Elem::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero tower element");
  if (height_ == 0) return Elem(s_.inv());
  return Elem(r_->den, r_->num);
}

inline Elem Elem::pow(std::int64_t e) const {
  if (e < 0) return inv().pow(-e);
  Elem acc = one_like(), base = *this;
  std::uint64_t n = static_cast<std::uint64_t>(e);
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

inline bool operator==(const Elem& a, const Elem& b) {
  if (a.height_ != b.height_) return false;
  if (a.height_ == 0) return a.s_ == b.s_;
  if (a.r_ == b.r_) return true;
  return a.r_->num == b.r_->num && a.r_->den == b.r_->den;
}

inline bool Elem::is_integral() const {
  if (height_ == 0) return true;
  if (!r_->den.is_one()) return false;
  for (const Elem& c : r_->num.coeffs())
    if (!c.is_integral()) return false;
  return true;
}

inline std::optional<Fp> Elem::as_prime_scalar() const {
  if (height_ == 0) return s_;
  if (!r_->den.is_one()) return std::nullopt;
  if (r_->num.is_zero()) return Fp(0, p());
  if (r_->num.degree() != 0) return std::nullopt;
  return r_->num.coeff(0).as_prime_scalar();
}

// ---- gcd of polynomials over a tower field ----
//
// The generic monic remainder sequence swells badly here: each step's
// coefficient arithmetic triggers recursive gcds on growing rational
// functions.  Instead we clear denominators once and run a subresultant
// pseudo-remainder sequence in the ring of integral elements, where +, *, and
// the prescribed exact divisions never reduce a fraction at any level.

namespace detail {

inline Elem int_exact_div_elem(const Elem& a, const Elem& b);

/// Exact quotient in the integral-element ring; every leading-coefficient
/// division along the way is itself exact.
inline Poly<Elem> int_poly_exact_div(const Poly<Elem>& a, const Poly<Elem>& b) {
  if (b.is_zero()) throw DivisionByZero("integral polynomial division by zero");
  Poly<Elem> r = a, q = Poly<Elem>::zero(a.unit());
  while (!r.is_zero()) {
    int before = r.degree();
    if (before < b.degree())
      throw PreconditionViolated("inexact integral polynomial division");
    std::size_t d = static_cast<std::size_t>(before - b.degree());
    Elem c = int_exact_div_elem(r.lead(), b.lead());
    q = q + Poly<Elem>::monomial(c, d, a.unit());
    r = r - b.shifted(d).scaled(c);
    if (!r.is_zero() && r.degree() >= before)
      throw PreconditionViolated("inexact integral polynomial division");
  }
  return q;
}

inline Elem int_exact_div_elem(const Elem& a, const Elem& b) {
  if (a.is_zero()) return a;
  if (b.is_one()) return a;
  if (a.height() == 0) return Elem(a.scalar() * b.scalar().inv());
  return Elem::raw(int_poly_exact_div(a.num(), b.num()),
                   Poly<Elem>::one(a.num().unit()));
}

inline Poly<Elem> int_poly_div_scalar(const Poly<Elem>& a, const Elem& s) {
  if (s.is_one()) return a;
  std::vector<Elem> c;
  c.reserve(a.coeffs().size());
  for (const Elem& x : a.coeffs()) c.push_back(int_exact_div_elem(x, s));
  return Poly<Elem>(std::move(c), a.unit());
}

inline std::pair<Poly<Elem>, Elem> clear_poly(const Poly<Elem>& p);

/// a and b integral, possibly zero; some common factor extractor (up to a
/// unit), used only to keep cleared denominators small.
inline Elem int_gcd(const Elem& a, const Elem& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.height() == 0) return a.one_like();
  if (a.is_one() || b.is_one()) return a.one_like();
  Poly<Elem> g = poly_gcd(a.num(), b.num());
  if (g.is_constant()) return a.one_like();
  return Elem::raw(clear_poly(g).first, Poly<Elem>::one(a.num().unit()));
}

inline std::pair<Elem, Elem> clear_elem(const Elem& e);

/// (Q, m) with Q = m * p, Q with fully integral coefficients, m integral.
inline std::pair<Poly<Elem>, Elem> clear_poly(const Poly<Elem>& p) {
  const Elem& unit = p.unit();
  bool integral = true;
  for (const Elem& c : p.coeffs())
    if (!c.is_integral()) {
      integral = false;
      break;
    }
  if (integral) return {p, unit.one_like()};
  std::vector<std::pair<Elem, Elem>> parts;
  parts.reserve(p.coeffs().size());
  Elem m = unit.one_like();
  for (const Elem& c : p.coeffs()) {
    parts.push_back(clear_elem(c));
    const Elem& d = parts.back().second;
    m = m * int_exact_div_elem(d, int_gcd(m, d));  // lcm, incrementally
  }
  std::vector<Elem> out;
  out.reserve(parts.size());
  for (const auto& [n, d] : parts) out.push_back(n * int_exact_div_elem(m, d));
  return {Poly<Elem>(std::move(out), unit), m};
}

/// (n, d) fully integral with e = n / d.
inline std::pair<Elem, Elem> clear_elem(const Elem& e) {
  if (e.height() == 0 || e.is_integral())
    return {e, e.one_like()};
  auto [n, mn] = clear_poly(e.num());
  auto [d, md] = clear_poly(e.den());
  // e = (n/mn) / (d/md) = (md * n) / (mn * d)
  const Elem unit_below = e.num().unit();
  return {Elem::raw(n.scaled(md), Poly<Elem>::one(unit_below)),
          Elem::raw(d.scaled(mn), Poly<Elem>::one(unit_below))};
}

/// gcd of the coefficients of an integral polynomial, up to a unit.
inline Elem int_content(const Poly<Elem>& p) {
  Elem g = p.unit().zero_like();
  for (const Elem& c : p.coeffs()) {
    g = int_gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

inline Poly<Elem> int_primitive_part(const Poly<Elem>& p) {
  Elem c = int_content(p);
  if (c.is_one()) return p;
  return int_poly_div_scalar(p, c);
}

/// Number of prime-field scalars in the representation; swell heuristic.
inline std::size_t elem_size(const Elem& e) {
  if (e.height() == 0) return 1;
  std::size_t s = 0;
  for (const Elem& c : e.num().coeffs()) s += elem_size(c);
  for (const Elem& c : e.den().coeffs()) s += elem_size(c);
  return s;
}
inline std::size_t poly_size(const Poly<Elem>& p) {
  std::size_t s = 0;
  for (const Elem& c : p.coeffs()) s += elem_size(c);
  return s;
}

/// lead(b)^(deg a - deg b + 1) * a  mod  b, without coefficient division.
inline Poly<Elem> prem_classical(const Poly<Elem>& a, const Poly<Elem>& b) {
  Poly<Elem> r = a;
  int e = a.degree() - b.degree() + 1;
  const Elem& lb = b.lead();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    std::size_t d = static_cast<std::size_t>(r.degree() - b.degree());
    Poly<Elem> t = b.shifted(d).scaled(r.lead());
    r = r.scaled(lb) - t;
    --e;
  }
  for (; e > 0; --e) r = r.scaled(lb);
  return r;
}

/// Remainder of a by b up to a unit.  Each elimination step scales by
/// lead(b)/g against lead(r)/g with g their gcd, which keeps coefficients far
/// smaller than the classical pseudo-remainder; only valid when the caller
/// needs the remainder up to a scalar factor.
inline Poly<Elem> prem_reduced(const Poly<Elem>& a, const Poly<Elem>& b) {
  Poly<Elem> r = a;
  const Elem& lb = b.lead();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    std::size_t d = static_cast<std::size_t>(r.degree() - b.degree());
    Elem g = int_gcd(r.lead(), lb);
    Poly<Elem> t = b.shifted(d).scaled(int_exact_div_elem(r.lead(), g));
    r = r.scaled(int_exact_div_elem(lb, g)) - t;
  }
  return r;
}

}  // namespace detail

inline Poly<Elem> poly_gcd(const Poly<Elem>& a, const Poly<Elem>& b) {
  if (a.is_zero() && b.is_zero())
    throw PreconditionViolated("gcd of two zero polynomials");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly<Elem>::one(a.unit());
  if (a.unit().height() == 0)
    return charp::poly_gcd<Elem>(a, b);  // scalar coefficients: plain Euclid
  // Fraction-free chain with two regimes.  The subresultant bookkeeping needs
  // no recursive gcds and wins while coefficients stay moderate; once they
  // swell past the threshold the chain switches to a primitive sequence whose
  // per-step content removal stops the compounding.
  constexpr std::size_t kSwell = 1u << 16;
  Poly<Elem> A = detail::clear_poly(a).first;
  Poly<Elem> B = detail::clear_poly(b).first;
  if (A.degree() < B.degree()) std::swap(A, B);
  bool primitive = detail::poly_size(A) + detail::poly_size(B) > kSwell;
  if (primitive) {
    A = detail::int_primitive_part(A);
    B = detail::int_primitive_part(B);
  }
  Elem g = a.unit().one_like(), h = g;
  while (true) {
    if (B.degree() == 0) return Poly<Elem>::one(a.unit());
    int delta = A.degree() - B.degree();
    if (primitive) {
      Poly<Elem> R = detail::prem_reduced(A, B);
      if (R.is_zero()) break;
      A = B;
      B = detail::int_primitive_part(R);
    } else {
      Poly<Elem> R = detail::prem_classical(A, B);
      if (R.is_zero()) break;
      A = B;
      B = detail::int_poly_div_scalar(R, g * h.pow(delta));
      g = A.lead();
      if (delta == 1)
        h = g;
      else if (delta > 1)
        h = detail::int_exact_div_elem(g.pow(delta), h.pow(delta - 1));
      if (detail::poly_size(B) > kSwell) {
        primitive = true;
        A = detail::int_primitive_part(A);
        B = detail::int_primitive_part(B);
      }
    }
  }
  return B.monic();
}

}  // namespace charp

#endif  // CHARP_ELEM_HPP
