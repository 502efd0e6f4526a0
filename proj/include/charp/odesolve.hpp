#ifndef CHARP_ODESOLVE_HPP
#define CHARP_ODESOLVE_HPP

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "charp/annihilator.hpp"
#include "charp/antideriv.hpp"
#include "charp/ffroots.hpp"
#include "charp/frobenius.hpp"
#include "charp/operators.hpp"
#include "charp/tower.hpp"

namespace charp {

/// Q(T) = P(T^{p^e}) with P' != 0 and e maximal.
inline std::pair<Poly<Elem>, unsigned> inseparable_split(const Poly<Elem>& q,
                                                         std::uint64_t p) {
  if (q.is_zero()) throw PreconditionViolated("inseparable_split of zero");
  Poly<Elem> f = q;
  unsigned e = 0;
  while (f.degree() > 0) {
    bool all = true;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i)
      if (!f.coeffs()[i].is_zero() && i % p != 0) {
        all = false;
        break;
      }
    if (!all) break;
    std::vector<Elem> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p)
      c.push_back(f.coeffs()[i]);
    f = Poly<Elem>(std::move(c), q.unit());
    ++e;
  }
  return {std::move(f), e};
}

/// The substitution data for order p^e: u with d^{p^e}(u) = 1 (in a
/// logarithmic extension) and A(T) = sum_{i<=e} (d^{p^i}u)^{p^{e-i}}
/// T^{p^{e-i}}, which has constant coefficients and A' = 1; the generator E
/// with dE = alpha*d(u)*E then satisfies d^{p^e}(E) = A(alpha)*E.
struct EulerSubst {
  Tower tower;
  Elem u;
  Poly<Elem> a;
};

inline EulerSubst euler_substitution(const Tower& t, unsigned e) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) q *= t.p();
  auto [t2, u] = unit_nth(t, static_cast<std::size_t>(q));
  DerivChain uc(t2, u);
  Poly<Elem> a = Poly<Elem>::zero(t2.one());
  std::uint64_t qi = 1;   // p^i
  std::uint64_t qei = q;  // p^{e-i}
  for (unsigned i = 0; i <= e; ++i) {
    Elem c = uc.at(static_cast<std::size_t>(qi))
                 .pow(static_cast<std::int64_t>(qei));
    a = a + Poly<Elem>::monomial(c, static_cast<std::size_t>(qei), t2.one());
    qi *= t.p();
    qei /= t.p();
  }
  if (a.formal_derivative() != Poly<Elem>::one(t2.one()))
    throw PreconditionViolated("internal: A' != 1 in euler substitution");
  return {std::move(t2), std::move(u), std::move(a)};
}

/// Residue ring C[alpha]/(modulus) with a squarefree modulus over the tower's
/// constants; alpha is a formal constant (d(alpha) = 0).  Discovering a
/// non-invertible element splits the modulus instead of failing (dynamic
/// evaluation).
class QuotientCtx {
 public:
  QuotientCtx(Elem unit, Poly<Elem> modulus)
      : unit_(std::move(unit)), mod_(modulus.monic()) {}

  const Poly<Elem>& modulus() const { return mod_; }
  const Elem& unit() const { return unit_; }
  Poly<Elem> alpha() const { return Poly<Elem>::x(unit_); }

  Poly<Elem> reduce(const Poly<Elem>& g) const {
    return poly_divmod(g, mod_).second;
  }
  Poly<Elem> mul(const Poly<Elem>& a, const Poly<Elem>& b) const {
    return reduce(a * b);
  }

  struct Split {
    Poly<Elem> f1, f2;  // modulus = f1 * f2, both proper factors
  };

  /// Inverse of a mod the modulus, or the modulus split that a witnesses.
  std::variant<Poly<Elem>, Split> inv(const Poly<Elem>& a) const {
    Poly<Elem> r0 = mod_, r1 = reduce(a);
    if (r1.is_zero()) throw DivisionByZero("inverse of zero residue");
    Poly<Elem> s0 = Poly<Elem>::zero(unit_), s1 = Poly<Elem>::one(unit_);
    while (!r1.is_zero()) {
      auto [q, r] = poly_divmod(r0, r1);
      Poly<Elem> s2 = s0 - q * s1;
      r0 = r1;
      r1 = r;
      s0 = s1;
      s1 = s2;
    }
    if (r0.degree() > 0) {
      Poly<Elem> g = r0.monic();
      return Split{g, poly_exact_div(mod_, g)};
    }
    // r0 is a nonzero constant: s0 / r0 is the inverse
    return reduce(s0 * Poly<Elem>::constant(r0.coeff(0).inv(), unit_));
  }

 private:
  Elem unit_;
  Poly<Elem> mod_;
};

/// One solution class of a constant-coefficient equation Q(d)(y) = 0.
struct OdeSolution {
  Tower extended_tower;
  std::string generator;              // name of E; empty for the solution 1
  Elem solution;                      // the generator E, or 1 when alpha = 0
  std::optional<Elem> alpha;          // explicit constant root when in F_p
  std::optional<Poly<Elem>> modulus;  // minimal/squarefree modulus of a
                                      // formal root (alpha adjoined)
  unsigned e = 0;                     // inseparability exponent
  Poly<Elem> p_part;                  // P with Q(T) = P(T^{p^e})
  Elem u;                             // chain element with d^{p^e}(u) = 1
  Poly<Elem> a_poly;                  // Euler substitution A
  Poly<Elem> r_poly;                  // R = P(A(T))
  bool verified = false;
};

enum class RootPath { Auto, FpOnly, Formal };

namespace detail {

/// Cofactors of d^k(E) over E for dE = alpha*v*E with alpha formal mod M:
/// g_{k+1} = d(g_k) coefficientwise + g_k * (v*alpha), reduced.
inline std::vector<Poly<Elem>> formal_deriv_cofactors(const Tower& t,
                                                      const QuotientCtx& ctx,
                                                      const Elem& v,
                                                      std::size_t n) {
  std::vector<Poly<Elem>> g{Poly<Elem>::one(t.one())};
  Poly<Elem> valpha = Poly<Elem>::monomial(v, 1, t.one());
  for (std::size_t k = 0; k < n; ++k) {
    const Poly<Elem>& cur = g.back();
    std::vector<Elem> dc;
    dc.reserve(cur.coeffs().size());
    for (const Elem& c : cur.coeffs()) dc.push_back(t.derive(c));
    Poly<Elem> next = Poly<Elem>(std::move(dc), t.one()) + cur * valpha;
    g.push_back(ctx.reduce(next));
  }
  return g;
}

inline std::string fresh_gen_name(const Tower& t, std::string name) {
  while (has_gen_name(t, name)) name += "_";
  return name;
}

}  // namespace detail

/// Solutions of Q(d)(y) = 0 in elementary extensions: after the inseparable
/// split and the Euler substitution, roots alpha of R = P(A(T)) give
/// generators E with dE = alpha*d(u)*E.  F_p roots are adjoined as actual
/// HyperExp generators; other root classes keep alpha formal modulo a
/// squarefree modulus, and the equation is verified symbolically there.
inline std::vector<OdeSolution> solve_constant_ode(const Tower& t,
                                                   const ConstOp& q,
                                                   RootPath path = RootPath::Auto) {
  if (q.is_zero()) throw PreconditionViolated("zero operator");
  for (const auto& [o, c] : q.terms()) {
    (void)o;
    if (!t.is_constant(c))
      throw PreconditionViolated("solve_constant_ode needs constant coefficients");
  }
  Poly<Elem> qp = q.as_poly(t.one());
  if (qp.degree() == 0)
    throw PreconditionViolated("solve_constant_ode needs an operator of order >= 1");
  auto [p_part, e] = inseparable_split(qp, t.p());
  EulerSubst es = euler_substitution(t, e);
  const Tower& t2 = es.tower;

  // R = P(A(T)) by Horner; deg R = deg A * deg P = p^e * deg P = deg Q
  Poly<Elem> r = Poly<Elem>::zero(t2.one());
  for (std::size_t i = p_part.coeffs().size(); i-- > 0;)
    r = r * es.a + Poly<Elem>::constant(t2.lift(p_part.coeffs()[i]), t2.one());
  if (r.degree() != qp.degree())
    throw PreconditionViolated("internal: deg(P(A)) != deg(Q)");

  Elem v = t2.derive(es.u);
  auto base = [&, &pp = p_part, &ee = e]() {
    return OdeSolution{t2,  "",     t2.one(), std::nullopt, std::nullopt,
                       ee,  pp,     es.u,     es.a,         r,
                       false};
  };

  std::vector<OdeSolution> out;
  auto add_explicit = [&](const Elem& alpha) {
    OdeSolution s = base();
    s.alpha = alpha;
    if (alpha.is_zero()) {
      // dE = 0: the constant solution 1
      if (!q.apply(t2, t2.one()).is_zero())
        throw PreconditionViolated("internal: constant solution failed check");
    } else {
      std::string name = detail::fresh_gen_name(t2, "E");
      Tower t3 = t2.with_hyperexp(name, alpha * v);
      Elem gen = t3.gen(name);
      if (!q.apply(t3, gen).is_zero())
        throw PreconditionViolated("internal: explicit solution failed check");
      s.extended_tower = std::move(t3);
      s.generator = name;
      s.solution = s.extended_tower.gen(name);
    }
    s.verified = true;
    out.push_back(std::move(s));
  };
  auto add_formal = [&](const Poly<Elem>& modulus) {
    OdeSolution s = base();
    QuotientCtx ctx(t2.one(), modulus);
    auto cof = detail::formal_deriv_cofactors(t2, ctx, v, q.order());
    Poly<Elem> acc = Poly<Elem>::zero(t2.one());
    for (const auto& [o, c] : q.terms()) acc = acc + cof[o].scaled(t2.lift(c));
    if (!ctx.reduce(acc).is_zero())
      throw PreconditionViolated("internal: formal solution failed check");
    s.modulus = ctx.modulus();
    s.generator = "E";
    s.verified = true;
    out.push_back(std::move(s));
  };

  bool over_fp = true;
  std::vector<Fp> rc;
  for (const Elem& c : r.coeffs()) {
    auto s = c.as_prime_scalar();
    if (!s) {
      over_fp = false;
      break;
    }
    rc.push_back(*s);
  }

  if (over_fp && path != RootPath::Formal) {
    Poly<Fp> rp(std::move(rc), Fp(1, t.p()));
    for (const FFRoot& root : ff_factor_roots(rp)) {
      if (root.value) {
        add_explicit(t2.from_int(static_cast<std::int64_t>(root.value->value())));
      } else {
        std::vector<Elem> mc;
        for (const Fp& c : root.min_poly.coeffs())
          mc.push_back(t2.from_int(static_cast<std::int64_t>(c.value())));
        add_formal(Poly<Elem>(std::move(mc), t2.one()));
      }
    }
    if (out.empty()) {
      if (path == RootPath::FpOnly)
        throw NoRootWithinBound("no root of R found in F_p^m within the bound");
      Poly<Elem> g = poly_gcd(r, r.formal_derivative());
      add_formal(g.is_one() ? r : poly_exact_div(r, g));
    }
    return out;
  }
  if (path == RootPath::FpOnly)
    throw NoRootWithinBound("R does not have prime-field coefficients");
  Poly<Elem> rd = r.formal_derivative();
  Poly<Elem> g = rd.is_zero() ? Poly<Elem>::one(t2.one())
                              : poly_gcd(r, rd);
  add_formal(g.is_one() ? r : poly_exact_div(r, g));
  return out;
}

/// [EXPERIMENTAL] An operator U of order < order(Q) with P*U a left multiple
/// of Q, so that f with Q(d)f = 0 gives P(d)(U(d)f) = 0.  U's coefficients
/// are sought in the span of the Frobenius monomials with constant (p-th
/// power) coordinates, which keeps the condition K-linear.  The result is
/// verified on a formal companion-matrix solution of Q; a zero transfer there
/// raises GenericityFailure.
inline SkewOp transfer_operator(const Tower& t, const SkewOp& p_op,
                                const ConstOp& q) {
  if (q.is_zero() || p_op.is_zero())
    throw PreconditionViolated("transfer_operator needs nonzero operators");
  const std::size_t nq = q.order();
  if (static_cast<std::size_t>(p_op.order()) > nq)
    throw PreconditionViolated("transfer_operator needs order(Q) >= order(P)");
  SkewOp q_op(q.as_poly(t.one()).coeffs(), t.one());
  if (skew_right_divmod(t, p_op, q_op).second.is_zero())
    return SkewOp({t.one()}, t.one());  // P itself is a left multiple of Q

  // Frobenius monomial basis of K over K^p
  std::vector<Elem> mono{t.one()};
  for (std::size_t s = 0; s < t.depth(); ++s) {
    std::vector<Elem> next;
    Elem g = t.gen(s);
    for (const Elem& m : mono) {
      Elem acc = m;
      for (std::uint64_t r = 0; r < t.p(); ++r) {
        next.push_back(acc);
        acc = acc * g;
      }
    }
    mono = std::move(next);
  }

  // columns: remainder of P * (m ∂^j) mod Q, as nq stacked coefficients
  std::vector<std::pair<std::size_t, Elem>> basis;  // (j, monomial)
  std::vector<std::vector<Elem>> cols;
  for (std::size_t j = 0; j < nq; ++j)
    for (const Elem& m : mono) {
      SkewOp u = SkewOp::monomial(m, j, t.one());
      SkewOp rem = skew_right_divmod(t, skew_mul(t, p_op, u), q_op).second;
      std::vector<Elem> col;
      col.reserve(nq);
      for (std::size_t i = 0; i < nq; ++i) col.push_back(rem.coeff(i));
      basis.emplace_back(j, m);
      cols.push_back(std::move(col));
    }

  // K^p-linear dependence (any nonzero kernel vector)
  std::map<std::pair<std::size_t, FrobExpo>, std::vector<Elem>> rows;
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t s = 0; s < nq; ++s)
      for (auto& [expo, g] : frobenius_decompose(t, cols[c][s]).terms) {
        auto it = rows.find({s, expo});
        if (it == rows.end())
          it = rows.emplace(std::make_pair(s, expo),
                            std::vector<Elem>(cols.size(), t.zero()))
                   .first;
        it->second[c] = g;
      }
  Matrix<Elem> m(rows.size(), cols.size(), t.one());
  std::size_t ri = 0;
  for (auto& [key, row] : rows) {
    (void)key;
    for (std::size_t c = 0; c < cols.size(); ++c) m.at(ri, c) = row[c];
    ++ri;
  }
  auto kernel = matrix_kernel(m);
  if (kernel.empty()) throw NoTransferFound();
  std::vector<Elem> k = kernel.front();

  std::vector<Elem> uc(nq, t.zero());
  for (std::size_t c = 0; c < k.size(); ++c)
    if (!k[c].is_zero())
      uc[basis[c].first] =
          uc[basis[c].first] +
          k[c].pow(static_cast<std::int64_t>(t.p())) * basis[c].second;
  SkewOp u(std::move(uc), t.one());
  if (u.is_zero()) throw NoTransferFound();

  // verify on a formal solution: companion linear block for monic Q
  Elem lead_inv = q.coeff(nq).inv();
  Matrix<Elem> comp(nq, nq, t.one());
  for (std::size_t i = 0; i + 1 < nq; ++i) comp.at(i, i + 1) = t.one();
  for (std::size_t jj = 0; jj < nq; ++jj)
    comp.at(nq - 1, jj) = -(q.coeff(jj) * lead_inv);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nq; ++i)
    names.push_back(detail::fresh_gen_name(t, "y" + std::to_string(i)));
  Tower ct = t.with_linear_block(names, comp);
  Elem f = ct.gen(names[0]);
  if (!q.apply(ct, f).is_zero())
    throw PreconditionViolated("internal: companion solution failed check");
  Elem g = u.apply(ct, f);
  if (g.is_zero()) throw GenericityFailure();
  if (!p_op.apply(ct, g).is_zero())
    throw PreconditionViolated("internal: transfer verification failed");
  return u;
}

}  // namespace charp

#endif  // CHARP_ODESOLVE_HPP
