#ifndef CHARP_FFROOTS_HPP
#define CHARP_FFROOTS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "charp/fp.hpp"
#include "charp/poly.hpp"

namespace charp {

/// A conjugacy class of roots of a polynomial over F_p: the class of X in
/// F_p[X]/(min_poly).  min_poly is monic irreducible of degree m; the class
/// holds m conjugate roots in F_{p^m}.
struct FFRoot {
  Poly<Fp> min_poly;
  std::optional<Fp> value;  // set when the root lies in F_p itself
  unsigned multiplicity = 1;
  unsigned degree() const { return static_cast<unsigned>(min_poly.degree()); }
};

namespace detail {

inline Poly<Fp> poly_powmod(const Poly<Fp>& base, std::uint64_t e,
                            const Poly<Fp>& mod) {
  Poly<Fp> acc = Poly<Fp>::one(base.unit());
  Poly<Fp> b = poly_divmod(base, mod).second;
  while (e) {
    if (e & 1) acc = poly_divmod(acc * b, mod).second;
    b = poly_divmod(b * b, mod).second;
    e >>= 1;
  }
  return acc;
}

inline Poly<Fp> random_poly(std::mt19937_64& rng, std::uint64_t p, int deg) {
  std::vector<Fp> c;
  for (int i = 0; i <= deg; ++i)
    c.emplace_back(static_cast<std::int64_t>(rng() % p), p);
  return Poly<Fp>(std::move(c), Fp(1, p));
}

/// Cantor-Zassenhaus equal-degree splitting: h is a squarefree product of
/// irreducibles all of degree d.
inline void equal_degree_split(const Poly<Fp>& h, unsigned d,
                               std::mt19937_64& rng,
                               std::vector<Poly<Fp>>& out) {
  if (h.degree() == static_cast<int>(d)) {
    out.push_back(h.monic());
    return;
  }
  const std::uint64_t p = h.unit().modulus();
  for (;;) {
    Poly<Fp> u = random_poly(rng, p, h.degree() - 1);
    if (u.is_zero() || u.is_constant()) continue;
    Poly<Fp> g = poly_gcd(u, h);
    if (g.degree() > 0 && g.degree() < h.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(poly_exact_div(h, g), d, rng, out);
      return;
    }
    Poly<Fp> w(h.unit());
    if (p == 2) {
      // trace map u + u^2 + ... + u^{2^{d-1}} mod h
      Poly<Fp> t = u, acc = u;
      for (unsigned i = 1; i < d; ++i) {
        t = poly_divmod(t * t, h).second;
        acc = acc + t;
      }
      w = acc;
    } else {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < d; ++i) q *= p;
      w = poly_powmod(u, (q - 1) / 2, h) - Poly<Fp>::one(h.unit());
    }
    if (w.is_zero()) continue;
    g = poly_gcd(w, h);
    if (g.degree() > 0 && g.degree() < h.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(poly_exact_div(h, g), d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// All roots of a (nonzero) polynomial over F_p that lie in an extension
/// F_{p^m} with m <= m_bound, grouped into conjugacy classes with their
/// minimal polynomials and multiplicities.
inline std::vector<FFRoot> ff_factor_roots(const Poly<Fp>& a,
                                           unsigned m_bound = 6,
                                           std::uint64_t seed = 0x5eed) {
  if (a.is_zero()) throw PreconditionViolated("ff_factor_roots of zero polynomial");
  std::vector<FFRoot> roots;
  if (a.degree() == 0) return roots;
  const std::uint64_t p = a.unit().modulus();
  const Poly<Fp> x = Poly<Fp>::x(a.unit());
  Poly<Fp> f = a.monic();
  std::mt19937_64 rng(seed);

  // product of (X - alpha) over roots alpha of exact degree d, for d ascending
  std::vector<Poly<Fp>> exact(m_bound + 1, Poly<Fp>::one(a.unit()));
  for (unsigned m = 1; m <= m_bound && m <= static_cast<unsigned>(f.degree()); ++m) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) q *= p;
    // gcd(f, X^{p^m} - X): all roots of f inside F_{p^m}
    Poly<Fp> frob = detail::poly_powmod(x, q, f) - x;
    if (frob.is_zero()) frob = f;  // f divides X^{p^m} - X
    Poly<Fp> g = poly_gcd(f, frob);
    for (unsigned d = 1; d < m; ++d)
      if (m % d == 0 && exact[d].degree() > 0) g = poly_exact_div(g, poly_gcd(g, exact[d]));
    exact[m] = g;
    if (g.degree() <= 0) continue;
    std::vector<Poly<Fp>> irreds;
    detail::equal_degree_split(g, m, rng, irreds);
    for (const Poly<Fp>& q_poly : irreds) {
      FFRoot r{q_poly, std::nullopt, 1};
      if (m == 1) r.value = -q_poly.coeff(0);
      // multiplicity in the original polynomial
      Poly<Fp> rest = a.monic();
      unsigned mult = 0;
      for (;;) {
        auto [quo, rem] = poly_divmod(rest, q_poly);
        if (!rem.is_zero()) break;
        rest = quo;
        ++mult;
      }
      r.multiplicity = mult;
      roots.push_back(std::move(r));
    }
  }
  return roots;
}

}  // namespace charp

#endif  // CHARP_FFROOTS_HPP
