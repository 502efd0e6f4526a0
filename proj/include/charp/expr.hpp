#ifndef CHARP_EXPR_HPP
#define CHARP_EXPR_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "charp/tower.hpp"

namespace charp {

namespace detail {

/// Values during expression evaluation: polynomials in one reserved
/// indeterminate (for operator input) whose coefficients are tower elements.
/// Plain element expressions are the degree-0 case.
class ExprParser {
 public:
  ExprParser(const std::string& src, const Tower& t, std::string indet)
      : src_(src), t_(t), indet_(std::move(indet)) {}

  Poly<Elem> run() {
    skip_ws();
    Poly<Elem> v = parse_sum();
    skip_ws();
    if (pos_ != src_.size())
      throw SyntaxError("unexpected trailing input", pos_);
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  Poly<Elem> parse_sum() {
    Poly<Elem> v = parse_product();
    for (;;) {
      if (eat('+'))
        v = v + parse_product();
      else if (eat('-'))
        v = v - parse_product();
      else
        return v;
    }
  }

  Poly<Elem> parse_product() {
    Poly<Elem> v = parse_unary();
    for (;;) {
      if (eat('*')) {
        v = v * parse_unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        Poly<Elem> d = parse_unary();
        if (d.degree() > 0)
          throw SyntaxError("cannot divide by an operator term", at);
        if (d.is_zero()) throw SyntaxError("division by zero", at);
        v = v.scaled(d.coeff(0).inv());
      } else {
        return v;
      }
    }
  }

  Poly<Elem> parse_unary() {
    if (eat('-')) return Poly<Elem>::zero(t_.one()) - parse_unary();
    return parse_power();
  }

  Poly<Elem> parse_power() {
    Poly<Elem> a = parse_atom();
    skip_ws();
    if (!eat('^')) return a;
    std::uint64_t e = parse_exponent();
    Poly<Elem> r = Poly<Elem>::one(t_.one());
    for (std::uint64_t i = 0; i < e; ++i) r = r * a;
    return r;
  }

  // exponent: nonnegative integer literal, right-associative chains allowed
  std::uint64_t parse_exponent() {
    skip_ws();
    std::size_t at = pos_;
    if (pos_ < src_.size() && src_[pos_] == '-')
      throw SyntaxError("negative exponent", at);
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
      throw SyntaxError("expected integer exponent", at);
    std::uint64_t v = read_int(at);
    skip_ws();
    if (eat('^')) {
      std::uint64_t e = parse_exponent();
      std::uint64_t r = 1;
      for (std::uint64_t i = 0; i < e; ++i) {
        if (r > (1u << 20) / (v ? v : 1))
          throw SyntaxError("exponent too large", at);
        r *= v;
      }
      return r;
    }
    if (v > (1u << 20)) throw SyntaxError("exponent too large", at);
    return v;
  }

  std::uint64_t read_int(std::size_t at) {
    std::uint64_t v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(src_[pos_] - '0');
      if (v > (1ull << 40)) throw SyntaxError("integer literal too large", at);
      ++pos_;
    }
    return v;
  }

  Poly<Elem> parse_atom() {
    skip_ws();
    std::size_t at = pos_;
    if (pos_ >= src_.size()) throw SyntaxError("unexpected end of input", at);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Poly<Elem> v = parse_sum();
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = read_int(at);
      return Poly<Elem>::constant(
          t_.from_int(static_cast<std::int64_t>(v % t_.p())), t_.one());
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        name += src_[pos_];
        ++pos_;
      }
      if (!indet_.empty() && name == indet_) return Poly<Elem>::x(t_.one());
      for (const auto& s : t_.slots())
        if (s.name == name)
          return Poly<Elem>::constant(t_.gen(name), t_.one());
      throw UnknownVariable(name);
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", at);
  }

  const std::string& src_;
  const Tower& t_;
  std::string indet_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Element expression: precedence ^ > unary- > * / > + -, ^ right-associative
/// over integer exponents, no implicit multiplication.
inline Elem parse_expr(const std::string& src, const Tower& t) {
  Poly<Elem> v = detail::ExprParser(src, t, "").run();
  return v.is_zero() ? t.zero() : v.coeff(0);
}

/// Operator expression: a commutative polynomial in the reserved symbol
/// `indet` (the derivation), coefficients parsed as element expressions.
inline Poly<Elem> parse_operator(const std::string& src, const Tower& t,
                                 const std::string& indet = "D") {
  return detail::ExprParser(src, t, indet).run();
}

namespace detail {

struct Fmt {
  std::string s;
  bool product_safe;  // embeddable in a product without parentheses
};

inline Fmt format_rec(const Tower& t, const Elem& e);

/// One polynomial layer in the generator named `name`; coefficients live one
/// level down.  Returns the rendering plus whether it can stand inside a
/// product or quotient without parentheses.
inline Fmt format_poly(const Tower& t, const Poly<Elem>& p,
                       const std::string& name) {
  std::vector<Fmt> terms;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    const Elem& c = p.coeffs()[i];
    if (c.is_zero()) continue;
    std::string mono;
    if (i >= 1) {
      mono = name;
      if (i > 1) mono += "^" + std::to_string(i);
    }
    if (mono.empty()) {
      // a bare coefficient keeps the safety of its own rendering
      terms.push_back(format_rec(t, c));
    } else if (c.is_one()) {
      terms.push_back({mono, true});
    } else {
      Fmt f = format_rec(t, c);
      terms.push_back(
          {(f.product_safe ? f.s : "(" + f.s + ")") + "*" + mono, true});
    }
  }
  if (terms.empty()) return {"0", true};
  std::string s = terms[0].s;
  for (std::size_t i = 1; i < terms.size(); ++i) s += "+" + terms[i].s;
  return {std::move(s), terms.size() == 1 && terms[0].product_safe};
}

/// True when the rendering is a single atom (usable as a divisor unadorned).
inline bool atomic(const std::string& s) {
  for (char c : s)
    if (c == '+' || c == '-' || c == '*' || c == '/') return false;
  return true;
}

inline Fmt format_rec(const Tower& t, const Elem& e) {
  if (e.height() == 0) return {std::to_string(e.scalar().value()), true};
  const std::string& name =
      t.slots()[static_cast<std::size_t>(e.height()) - 1].name;
  Fmt num = format_poly(t, e.num(), name);
  if (e.den().is_one()) return num;
  Fmt den = format_poly(t, e.den(), name);
  std::string ds = atomic(den.s) ? den.s : "(" + den.s + ")";
  std::string ns = num.product_safe ? num.s : "(" + num.s + ")";
  return {ns + "/" + ds, true};
}

}  // namespace detail

/// Canonical text form; parse_expr(format_elem(e)) reproduces e exactly.
/// Integer coefficients are reduced to [0, p).
inline std::string format_elem(const Tower& t, const Elem& e) {
  if (e.is_zero()) return "0";
  return detail::format_rec(t, e).s;
}

}  // namespace charp

#endif  // CHARP_EXPR_HPP
