#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "charp/operators.hpp"
#include "test_support.hpp"

using namespace charp;
using namespace charp::testing;

static SkewOp make_op(const Tower& t, std::vector<Elem> c) {
  return SkewOp(std::move(c), t.one());
}

TEST_CASE("skew commutation rule") {
  Tower t = Tower(3).with_base("X");
  Elem x = t.gen("X");
  // ∂ · X = X∂ + 1
  SkewOp d = make_op(t, {t.zero(), t.one()});
  SkewOp mx = make_op(t, {x});
  SkewOp prod = skew_mul(t, d, mx);
  REQUIRE(prod == make_op(t, {t.one(), x}));

  // (∂ + X)(∂ − X) = ∂² − (X² + 1)
  SkewOp a = make_op(t, {x, t.one()});
  SkewOp b = make_op(t, {-x, t.one()});
  SkewOp ab = skew_mul(t, a, b);
  REQUIRE(ab == make_op(t, {-(x * x + t.one()), t.zero(), t.one()}));

  // anything · 1 = itself
  SkewOp one = make_op(t, {t.one()});
  REQUIRE(skew_mul(t, ab, one) == ab);
  REQUIRE(skew_mul(t, one, ab) == ab);
}

TEST_CASE("skew product application equals sequential application") {
  std::mt19937 rng(7);
  for (std::uint64_t p : {2, 3, 5}) {
    Tower t = Tower(p).with_base("X");
    for (int i = 0; i < 6; ++i) {
      std::vector<Elem> ac, bc;
      for (int j = 0; j <= 2; ++j) ac.push_back(random_integral_elem(rng, t, 2));
      for (int j = 0; j <= 2; ++j) bc.push_back(random_integral_elem(rng, t, 2));
      SkewOp a(ac, t.one()), b(bc, t.one());
      Elem f = random_elem(rng, t, 2);
      REQUIRE(skew_mul(t, a, b).apply(t, f) == a.apply(t, b.apply(t, f)));
    }
  }
}

TEST_CASE("skew mul is associative") {
  std::mt19937 rng(8);
  Tower t = Tower(3).with_base("X");
  for (int i = 0; i < 5; ++i) {
    std::vector<Elem> ac, bc, cc;
    for (int j = 0; j <= 1; ++j) ac.push_back(random_integral_elem(rng, t, 2));
    for (int j = 0; j <= 2; ++j) bc.push_back(random_integral_elem(rng, t, 2));
    for (int j = 0; j <= 1; ++j) cc.push_back(random_integral_elem(rng, t, 2));
    SkewOp a(ac, t.one()), b(bc, t.one()), c(cc, t.one());
    REQUIRE(skew_mul(t, skew_mul(t, a, b), c) ==
            skew_mul(t, a, skew_mul(t, b, c)));
  }
}

TEST_CASE("skew right division worked example") {
  Tower t = Tower(3).with_base("X");
  Elem x = t.gen("X");
  SkewOp d2 = make_op(t, {t.zero(), t.zero(), t.one()});
  SkewOp dmx = make_op(t, {-x, t.one()});
  auto [q, r] = skew_right_divmod(t, d2, dmx);
  REQUIRE(q == make_op(t, {x, t.one()}));
  REQUIRE(r == make_op(t, {x * x + t.one()}));

  // aOp by itself → (1, 0)
  auto [q2, r2] = skew_right_divmod(t, dmx, dmx);
  REQUIRE(q2 == make_op(t, {t.one()}));
  REQUIRE(r2.is_zero());

  // lower order by higher → (0, aOp)
  auto [q3, r3] = skew_right_divmod(t, dmx, d2);
  REQUIRE(q3.is_zero());
  REQUIRE(r3 == dmx);
}

TEST_CASE("skew divmod reconstruction on random pairs") {
  std::mt19937 rng(9);
  int checked = 0;
  for (std::uint64_t p : {2, 3, 5}) {
    Tower t = Tower(p).with_base("X");
    while (checked % 40 != 39) {
      int na = static_cast<int>(rng() % 5), nb = static_cast<int>(rng() % 5);
      std::vector<Elem> ac, bc;
      for (int j = 0; j <= na; ++j) ac.push_back(random_integral_elem(rng, t, 2));
      for (int j = 0; j <= nb; ++j) bc.push_back(random_integral_elem(rng, t, 2));
      SkewOp a(ac, t.one()), b(bc, t.one());
      if (b.is_zero()) continue;
      auto [q, r] = skew_right_divmod(t, a, b);
      REQUIRE(skew_mul(t, q, b) + r == a);
      if (!r.is_zero()) REQUIRE(r.order() < b.order());
      ++checked;
    }
    ++checked;
  }
  REQUIRE(checked >= 100);
}

TEST_CASE("const op application and polynomial view") {
  Tower t = intro_tower(3);
  Elem x = t.gen("X"), e = t.gen("E");
  // ∂³ − 2X³ annihilates E
  ConstOp op(
      {{3, t.one()}, {0, -(t.from_int(2) * x.pow(3))}});
  REQUIRE(op.apply(t, e).is_zero());
  REQUIRE(op.order() == 3);
  REQUIRE(op.is_p_polynomial(3));
  ConstOp back = ConstOp::from_poly(op.as_poly(t.one()));
  REQUIRE(back.terms().size() == op.terms().size());
  REQUIRE(back.apply(t, e).is_zero());

  ConstOp notp({{2, t.one()}, {0, t.one()}});
  REQUIRE(!notp.is_p_polynomial(3));
  REQUIRE(notp.is_p_polynomial(2));
}
