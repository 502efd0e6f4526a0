#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "charp/elem.hpp"
#include "charp/fp.hpp"
#include "charp/matrix.hpp"
#include "charp/poly.hpp"
#include "charp/tower.hpp"

using namespace charp;

namespace {

Poly<Fp> fp_poly(std::initializer_list<std::int64_t> coeffs, std::uint64_t p) {
  std::vector<Fp> v;
  for (auto c : coeffs) v.emplace_back(c, p);
  return Poly<Fp>(std::move(v), Fp(1, p));
}

Fp rnd_fp(std::mt19937& rng, std::uint64_t p) {
  return Fp(static_cast<std::int64_t>(rng() % p), p);
}

Poly<Fp> rnd_poly(std::mt19937& rng, std::uint64_t p, int max_deg) {
  int d = static_cast<int>(rng() % (max_deg + 1));
  std::vector<Fp> v;
  for (int i = 0; i <= d; ++i) v.push_back(rnd_fp(rng, p));
  return Poly<Fp>(std::move(v), Fp(1, p));
}

}  // namespace

TEST_CASE("Fp field axioms on random triples") {
  std::mt19937 rng(12345);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (int i = 0; i < 200; ++i) {
      Fp a = rnd_fp(rng, p), b = rnd_fp(rng, p), c = rnd_fp(rng, p);
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE(a + (-a) == Fp(0, p));
      if (!a.is_zero()) REQUIRE(a * a.inv() == Fp(1, p));
    }
  }
}

TEST_CASE("poly_divmod worked examples") {
  // (X^2+1, X) over F_3
  auto [q1, r1] = poly_divmod(fp_poly({1, 0, 1}, 3), fp_poly({0, 1}, 3));
  REQUIRE(q1 == fp_poly({0, 1}, 3));
  REQUIRE(r1 == fp_poly({1}, 3));

  // (X^3+1, X+1) over F_3: X^3+1 = (X+1)^3
  auto [q2, r2] = poly_divmod(fp_poly({1, 0, 0, 1}, 3), fp_poly({1, 1}, 3));
  REQUIRE(r2.is_zero());
  REQUIRE(q2 * fp_poly({1, 1}, 3) == fp_poly({1, 0, 0, 1}, 3));
  REQUIRE(q2 == fp_poly({1, 2, 1}, 3));

  // zero dividend
  auto [q3, r3] = poly_divmod(Poly<Fp>::zero(Fp(1, 3)), fp_poly({0, 1}, 3));
  REQUIRE(q3.is_zero());
  REQUIRE(r3.is_zero());

  REQUIRE_THROWS_AS(poly_divmod(fp_poly({1}, 3), Poly<Fp>::zero(Fp(1, 3))),
                    DivisionByZero);
}

TEST_CASE("poly_divmod reconstruction on random polynomials") {
  std::mt19937 rng(7);
  for (std::uint64_t p : {2, 3, 5}) {
    for (int i = 0; i < 100; ++i) {
      Poly<Fp> a = rnd_poly(rng, p, 6);
      Poly<Fp> b = rnd_poly(rng, p, 3);
      if (b.is_zero()) continue;
      auto [q, r] = poly_divmod(a, b);
      REQUIRE(q * b + r == a);
      REQUIRE(r.degree() < b.degree());
    }
  }
}

TEST_CASE("poly_gcd worked examples") {
  REQUIRE(poly_gcd(fp_poly({-1, 0, 1}, 5), fp_poly({-1, 1}, 5)) == fp_poly({-1, 1}, 5));
  // (X^3+1, X+1) over F_3, check divisibility both ways
  Poly<Fp> g = poly_gcd(fp_poly({1, 0, 0, 1}, 3), fp_poly({1, 1}, 3));
  REQUIRE(g == fp_poly({1, 1}, 3));
  REQUIRE(poly_divmod(fp_poly({1, 0, 0, 1}, 3), g).second.is_zero());
  // coprime
  REQUIRE(poly_gcd(fp_poly({0, 1}, 3), fp_poly({1}, 3)) == fp_poly({1}, 3));
  REQUIRE_THROWS_AS(poly_gcd(Poly<Fp>::zero(Fp(1, 3)), Poly<Fp>::zero(Fp(1, 3))),
                    PreconditionViolated);
}

TEST_CASE("gcd properties on random polynomials") {
  std::mt19937 rng(99);
  for (std::uint64_t p : {2, 3, 5}) {
    for (int i = 0; i < 60; ++i) {
      Poly<Fp> a = rnd_poly(rng, p, 4), b = rnd_poly(rng, p, 4), c = rnd_poly(rng, p, 2);
      if (a.is_zero() && b.is_zero()) continue;
      Poly<Fp> g = poly_gcd(a, b);
      if (!a.is_zero()) REQUIRE(poly_divmod(a, g).second.is_zero());
      if (!b.is_zero()) REQUIRE(poly_divmod(b, g).second.is_zero());
      if (!c.is_zero()) {
        // gcd(a*c, b*c) = c * gcd(a, b) up to monic scaling
        Poly<Fp> lhs = poly_gcd(a * c, b * c);
        REQUIRE(lhs == (g * c).monic());
      }
    }
  }
}

TEST_CASE("formal derivative in characteristic p") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    // X^p -> 0
    Poly<Fp> xp = Poly<Fp>::monomial(Fp(1, p), p, Fp(1, p));
    REQUIRE(xp.formal_derivative().is_zero());
    // p-fold derivative of anything is zero
    std::mt19937 rng(p);
    Poly<Fp> a = rnd_poly(rng, p, 8);
    for (std::uint64_t i = 0; i < p; ++i) a = a.formal_derivative();
    REQUIRE(a.is_zero());
    // Wilson: (p-1)-fold derivative of X^{p-1} is -1
    Poly<Fp> w = Poly<Fp>::monomial(Fp(1, p), p - 1, Fp(1, p));
    for (std::uint64_t i = 0; i + 1 < p; ++i) w = w.formal_derivative();
    REQUIRE(w == Poly<Fp>::constant(Fp(-1, p), Fp(1, p)));
  }
  REQUIRE(fp_poly({0, 0, 1}, 3).formal_derivative() == fp_poly({0, 2}, 3));
}

TEST_CASE("rational function normalization at height 1") {
  Tower t = Tower(3).with_base("X");
  Elem x = t.gen("X");
  // (2X+2)/2 = X+1
  REQUIRE((t.from_int(2) * x + t.from_int(2)) / t.from_int(2) == x + t.one());
  // (X^3+X)/X = X^2+1
  REQUIRE((x.pow(3) + x) / x == x * x + t.one());
  // canonical form invariance under common factors
  std::mt19937 rng(3);
  Tower t5 = Tower(5).with_base("X");
  Elem y = t5.gen("X");
  for (int i = 0; i < 40; ++i) {
    auto re = [&](int deg) {
      Elem e = t5.zero();
      for (int j = 0; j <= deg; ++j)
        e = e + t5.from_int(static_cast<std::int64_t>(rng() % 5)) * y.pow(j);
      return e;
    };
    Elem a = re(3), b = re(3), c = re(2);
    if (b.is_zero() || c.is_zero()) continue;
    REQUIRE((a * c) / (b * c) == a / b);
  }
  // (X^2-1)/(X-1) = X+1 over F_5
  Elem num = y * y - t5.one(), den = y - t5.one();
  REQUIRE(num / den == y + t5.one());
}

TEST_CASE("matrix kernel") {
  Tower t = Tower(3).with_base("X");
  Elem one = t.one(), x = t.gen("X");

  Matrix<Elem> id = Matrix<Elem>::identity(2, one);
  REQUIRE(matrix_kernel(id).empty());

  Matrix<Elem> z(2, 2, one);
  REQUIRE(matrix_kernel(z).size() == 2);

  // [[1, X], [X, X^2]] has kernel spanned by (X, -1)
  Matrix<Elem> m(2, 2, one);
  m.at(0, 0) = one; m.at(0, 1) = x;
  m.at(1, 0) = x;   m.at(1, 1) = x * x;
  auto ker = matrix_kernel(m);
  REQUIRE(ker.size() == 1);
  for (const auto& row : {0, 1}) {
    Elem s = m.at(row, 0) * ker[0][0] + m.at(row, 1) * ker[0][1];
    REQUIRE(s.is_zero());
  }
  // proportional to (X, -1)
  REQUIRE((ker[0][0] * (-one) - ker[0][1] * x).is_zero());
}

TEST_CASE("matrix minimal polynomial") {
  Tower t = Tower(3).with_base("X");
  Elem one = t.one(), x = t.gen("X");

  Matrix<Elem> id = Matrix<Elem>::identity(3, one);
  Poly<Elem> mi = matrix_min_poly(id);
  REQUIRE(mi == Poly<Elem>({-one, one}, one));

  // [[1, X^2], [X, 2]] over F_3(X): min poly T^2 - X^3 - 1 (the Airy matrix)
  Matrix<Elem> m(2, 2, one);
  m.at(0, 0) = one;          m.at(0, 1) = x * x;
  m.at(1, 0) = x;            m.at(1, 1) = t.from_int(2);
  Poly<Elem> q = matrix_min_poly(m);
  Poly<Elem> expect({-(x.pow(3)) - one, t.zero(), one}, one);
  REQUIRE(q == expect);
  // annihilates the matrix
  Matrix<Elem> acc(2, 2, one);
  for (int i = q.degree(); i >= 0; --i) {
    acc = acc * m;
    Matrix<Elem> c = Matrix<Elem>::identity(2, one).scaled(q.coeff(i));
    acc = acc + c;
  }
  // Horner applied above actually computes q(m) when run from the top degree:
  REQUIRE(acc.is_zero());

  // diag(a, a) -> T - a
  Matrix<Elem> d(2, 2, one);
  d.at(0, 0) = x + one; d.at(1, 1) = x + one;
  REQUIRE(matrix_min_poly(d) == Poly<Elem>({-(x + one), one}, one));
}

TEST_CASE("min poly annihilates random matrices") {
  std::mt19937 rng(21);
  Tower t = Tower(5).with_base("X");
  Elem one = t.one(), x = t.gen("X");
  for (int it = 0; it < 10; ++it) {
    Matrix<Elem> m(3, 3, one);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        m.at(i, j) = t.from_int(static_cast<std::int64_t>(rng() % 5)) +
                     t.from_int(static_cast<std::int64_t>(rng() % 2)) * x;
    Poly<Elem> q = matrix_min_poly(m);
    REQUIRE(!q.is_zero());
    REQUIRE(q.lead().is_one());
    Matrix<Elem> acc(3, 3, one);
    for (int i = q.degree(); i >= 0; --i) {
      acc = acc * m;
      acc = acc + Matrix<Elem>::identity(3, one).scaled(q.coeff(i));
    }
    REQUIRE(acc.is_zero());
  }
}
