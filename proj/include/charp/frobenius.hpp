#ifndef CHARP_FROBENIUS_HPP
#define CHARP_FROBENIUS_HPP

#include <map>
#include <optional>
#include <vector>

#include "charp/tower.hpp"

namespace charp {

/// Multi-exponent over the tower generators; entry i is the exponent of
/// generator i, always < p.
using FrobExpo = std::vector<unsigned>;

/// e = sum of g^p * m over the terms, with m the monomial of the exponent.
/// Constant linear algebra over K^p reduces to ordinary linear algebra on the
/// preimages g, since p-th powers are constants and Frobenius is injective.
struct FrobDecomp {
  std::vector<std::pair<FrobExpo, Elem>> terms;
};

namespace detail {

/// Decompose an element of height h into sum g^p * (monomial in generators
/// 0..h-1 with exponents < p), recursively one generator at a time.
inline std::map<FrobExpo, Elem> frob_rec(const Elem& e) {
  std::map<FrobExpo, Elem> out;
  if (e.height() == 0) {
    if (!e.is_zero()) out.emplace(FrobExpo{}, e);  // c = c^p in F_p
    return out;
  }
  if (e.is_zero()) return out;
  const std::uint64_t p = e.p();
  const Poly<Elem>& den = e.den();
  // e = M(t) / den(t)^p with M = num * den^{p-1}
  Poly<Elem> m = e.num();
  for (std::uint64_t i = 0; i + 1 < p; ++i) m = m * den;
  const Elem unit_below = m.unit();       // one at height h-1
  const Elem unit_here = unit_below.lifted();
  const Elem t = Elem::raw(Poly<Elem>::x(unit_below), Poly<Elem>::one(unit_below));
  const Elem den_e = Elem::raw(e.den(), Poly<Elem>::one(unit_below));
  for (int j = 0; j <= m.degree(); ++j) {
    const Elem& c = m.coeff(j);
    if (c.is_zero()) continue;
    unsigned r = static_cast<unsigned>(j % p);
    std::int64_t beta = j / static_cast<std::int64_t>(p);
    for (auto& [expo, g] : frob_rec(c)) {
      // c = g^p * monomial  =>  c * t^j / den^p contributes (g * t^beta / den)^p
      // times (monomial * t^r)
      Elem contrib = g.lifted() * t.pow(beta) / den_e;
      FrobExpo key = expo;
      key.push_back(r);
      auto it = out.find(key);
      if (it == out.end()) out.emplace(std::move(key), contrib);
      else it->second = it->second + contrib;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace detail

inline FrobDecomp frobenius_decompose(const Tower& t, const Elem& e) {
  assert(e.height() == static_cast<int>(t.depth()));
  FrobDecomp d;
  for (auto& [expo, g] : detail::frob_rec(e)) d.terms.emplace_back(expo, g);
  return d;
}

inline Elem frob_reconstruct(const Tower& t, const FrobDecomp& d) {
  Elem acc = t.zero();
  for (const auto& [expo, g] : d.terms) {
    Elem m = t.one();
    for (std::size_t i = 0; i < expo.size(); ++i)
      if (expo[i]) m = m * t.gen(i).pow(expo[i]);
    acc = acc + g.pow(static_cast<std::int64_t>(t.p())) * m;
  }
  return acc;
}

/// r with r^p = e when e is a p-th power in the tower field, else nullopt.
inline std::optional<Elem> pth_root(const Tower& t, const Elem& e) {
  if (e.is_zero()) return t.zero();
  FrobDecomp d = frobenius_decompose(t, e);
  if (d.terms.size() != 1) return std::nullopt;
  for (unsigned r : d.terms[0].first)
    if (r != 0) return std::nullopt;
  return t.lift(d.terms[0].second);
}

}  // namespace charp

#endif  // CHARP_FROBENIUS_HPP
