#include <catch2/catch_amalgamated.hpp>

#include "charp/odesolve.hpp"
#include "test_support.hpp"

using namespace charp;
using namespace charp::testing;

namespace {

Poly<Elem> tpoly(const Tower& t, std::vector<std::pair<std::size_t, int>> terms) {
  Poly<Elem> r = Poly<Elem>::zero(t.one());
  for (auto [o, c] : terms)
    r = r + Poly<Elem>::monomial(t.from_int(c), o, t.one());
  return r;
}

}  // namespace

TEST_CASE("separable part extraction") {
  Tower t = Tower(3).with_base("X");
  {
    auto [p, e] = inseparable_split(tpoly(t, {{3, 1}, {1, -1}}), 3);
    REQUIRE(e == 0);
    REQUIRE(p == tpoly(t, {{3, 1}, {1, -1}}));
  }
  {
    auto [p, e] = inseparable_split(tpoly(t, {{3, 1}, {0, -1}}), 3);
    REQUIRE(e == 1);
    REQUIRE(p == tpoly(t, {{1, 1}, {0, -1}}));
  }
  {
    auto [p, e] = inseparable_split(tpoly(t, {{9, 1}}), 3);
    REQUIRE(e == 2);
    REQUIRE(p == tpoly(t, {{1, 1}}));
  }
}

TEST_CASE("euler substitution") {
  Tower t = Tower(3).with_base("X");
  {
    EulerSubst es = euler_substitution(t, 0);
    REQUIRE(es.tower.depth() == 1);
    REQUIRE(es.u == t.gen("X"));
    REQUIRE(es.a == Poly<Elem>::x(t.one()));
  }
  {
    EulerSubst es = euler_substitution(t, 1);
    const Tower& t2 = es.tower;
    Elem x = t2.gen("X");
    REQUIRE(es.u == -(x.pow(3) * t2.gen(1)));
    // A = (du)^3 T^3 + T with du = -X^2
    Poly<Elem> expect =
        Poly<Elem>::monomial(-(x.pow(6)), 3, t2.one()) +
        Poly<Elem>::x(t2.one());
    REQUIRE(es.a == expect);
  }
  for (std::uint64_t p : {2, 3}) {
    Tower b = Tower(p).with_base("X");
    for (unsigned e = 0; e <= 2; ++e) {
      EulerSubst es = euler_substitution(b, e);
      REQUIRE(es.a.formal_derivative() == Poly<Elem>::one(es.tower.one()));
      for (const Elem& c : es.a.coeffs()) REQUIRE(es.tower.is_constant(c));
      std::size_t q = 1;
      for (unsigned i = 0; i < e; ++i) q *= p;
      REQUIRE(es.tower.derive_n(es.u, q) == es.tower.one());
    }
  }
}

TEST_CASE("p solution classes of the Artin-Schreier operator") {
  for (std::uint64_t p : {3, 5}) {
    Tower t = Tower(p).with_base("X");
    ConstOp q({{static_cast<std::size_t>(p), t.one()}, {1, -t.one()}});
    auto sols = solve_constant_ode(t, q);
    REQUIRE(sols.size() == static_cast<std::size_t>(p));
    for (const OdeSolution& s : sols) {
      REQUIRE(s.verified);
      REQUIRE(s.alpha.has_value());
      REQUIRE(!s.modulus.has_value());
      REQUIRE(s.e == 0);
      REQUIRE(s.r_poly.degree() == static_cast<int>(p));
      REQUIRE(!s.solution.is_zero());
      // independent re-check in the returned tower
      REQUIRE(q.apply(s.extended_tower, s.solution).is_zero());
    }
    // each residue alpha appears exactly once
    std::vector<bool> seen(p, false);
    for (const OdeSolution& s : sols) {
      auto a = s.alpha->as_prime_scalar();
      REQUIRE(a.has_value());
      REQUIRE(!seen[a->value()]);
      seen[a->value()] = true;
    }
  }
}

TEST_CASE("constants solve the first-order operator") {
  Tower t = Tower(3).with_base("X");
  ConstOp q({{1, t.one()}});
  auto sols = solve_constant_ode(t, q);
  REQUIRE(sols.size() == 1);
  REQUIRE(sols[0].solution == t.one());
  REQUIRE(sols[0].generator.empty());
  REQUIRE(sols[0].alpha.has_value());
  REQUIRE(sols[0].alpha->is_zero());
}

TEST_CASE("purely inseparable operator needs a formal root") {
  Tower t = Tower(3).with_base("X");
  ConstOp q({{3, t.one()}, {0, -t.one()}});  // d^3 - 1
  auto sols = solve_constant_ode(t, q);
  REQUIRE(sols.size() == 1);
  const OdeSolution& s = sols[0];
  REQUIRE(s.verified);
  REQUIRE(s.e == 1);
  REQUIRE(s.modulus.has_value());
  REQUIRE(s.modulus->degree() == 3);
  REQUIRE(s.r_poly.degree() == 3);
  REQUIRE(!s.alpha.has_value());
}

TEST_CASE("formal path can be forced") {
  Tower t = Tower(3).with_base("X");
  ConstOp q({{3, t.one()}, {1, -t.one()}});
  auto sols = solve_constant_ode(t, q, RootPath::Formal);
  REQUIRE(sols.size() == 1);
  REQUIRE(sols[0].modulus.has_value());
  REQUIRE(sols[0].verified);
  REQUIRE_THROWS_AS(
      solve_constant_ode(t, ConstOp({{3, t.one()}, {0, -t.gen("X").pow(3)}}),
                         RootPath::FpOnly),
      NoRootWithinBound);
}

TEST_CASE("operator preconditions") {
  Tower t = Tower(3).with_base("X");
  REQUIRE_THROWS_AS(solve_constant_ode(t, ConstOp()), PreconditionViolated);
  REQUIRE_THROWS_AS(solve_constant_ode(t, ConstOp({{0, t.one()}})),
                    PreconditionViolated);
  REQUIRE_THROWS_AS(
      solve_constant_ode(t, ConstOp({{1, t.one()}, {0, t.gen("X")}})),
      PreconditionViolated);
}

TEST_CASE("quotient context arithmetic") {
  Tower t = Tower(3).with_base("X");
  Elem one = t.one();
  {
    // irreducible modulus: T^2 + 1 over F_3
    QuotientCtx ctx(one, tpoly(t, {{2, 1}, {0, 1}}));
    Poly<Elem> a = ctx.alpha();
    REQUIRE(ctx.mul(a, a) == tpoly(t, {{0, -1}}));
    auto inv = ctx.inv(a);
    REQUIRE(std::holds_alternative<Poly<Elem>>(inv));
    REQUIRE(ctx.mul(std::get<Poly<Elem>>(inv), a) == Poly<Elem>::one(one));
  }
  {
    // reducible modulus: inverting T - 1 mod T^2 - 1 splits it
    QuotientCtx ctx(one, tpoly(t, {{2, 1}, {0, -1}}));
    auto inv = ctx.inv(tpoly(t, {{1, 1}, {0, -1}}));
    REQUIRE(std::holds_alternative<QuotientCtx::Split>(inv));
    auto s = std::get<QuotientCtx::Split>(inv);
    REQUIRE(s.f1 * s.f2 == ctx.modulus());
    REQUIRE(s.f1.degree() == 1);
    REQUIRE(s.f2.degree() == 1);
  }
  {
    QuotientCtx ctx(one, tpoly(t, {{2, 1}, {0, 1}}));
    REQUIRE_THROWS_AS(ctx.inv(Poly<Elem>::zero(one)), DivisionByZero);
  }
}

TEST_CASE("transfer operator trivial cases") {
  Tower t = Tower(3).with_base("X");
  Elem x = t.gen("X");
  ConstOp q2({{2, t.one()}});
  {
    // P = Q: the identity transfers
    SkewOp p({t.zero(), t.zero(), t.one()}, t.one());
    SkewOp u = transfer_operator(t, p, q2);
    REQUIRE(u == SkewOp({t.one()}, t.one()));
  }
  {
    // P = d, Q = d^2: differentiating a Q-solution gives a P-solution
    SkewOp p({t.zero(), t.one()}, t.one());
    SkewOp u = transfer_operator(t, p, q2);
    SkewOp qs(q2.as_poly(t.one()).coeffs(), t.one());
    auto [w, r] = skew_right_divmod(t, skew_mul(t, p, u), qs);
    REQUIRE(r.is_zero());
  }
  (void)x;
}

TEST_CASE("transfer operator for the reduced Airy pair") {
  Tower t = Tower(3).with_base("X");
  Elem x = t.gen("X");
  SkewOp p({-x, t.zero(), t.one()}, t.one());  // d^2 - X
  ReduceResult rr = reduce_to_constant_coeffs(t, p);
  SkewOp u = transfer_operator(t, p, rr.op);
  SkewOp qs(rr.op.as_poly(t.one()).coeffs(), t.one());
  auto [w, r] = skew_right_divmod(t, skew_mul(t, p, u), qs);
  REQUIRE(r.is_zero());
  // applying U to a formal solution of the constant-coefficient equation
  // yields a solution of the original one (checked in transfer_operator; the
  // companion tower is rebuilt here to assert it independently)
  const std::size_t n = rr.op.order();
  Matrix<Elem> comp(n, n, t.one());
  for (std::size_t i = 0; i + 1 < n; ++i) comp.at(i, i + 1) = t.one();
  for (std::size_t j = 0; j < n; ++j)
    comp.at(n - 1, j) = -(rr.op.coeff(j) / rr.op.coeff(n));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("y" + std::to_string(i));
  Tower ct = t.with_linear_block(names, comp);
  Elem f = ct.gen("y0");
  REQUIRE(rr.op.apply(ct, f).is_zero());
  Elem g = u.apply(ct, f);
  REQUIRE(!g.is_zero());
  REQUIRE(p.apply(ct, g).is_zero());
}
