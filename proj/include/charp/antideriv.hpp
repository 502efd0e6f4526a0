#ifndef CHARP_ANTIDERIV_HPP
#define CHARP_ANTIDERIV_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "charp/annihilator.hpp"
#include "charp/tower.hpp"

namespace charp {

/// The elements u_0 = X, u_1, ..., u_k with derive_n(u_j, p^j) = 1, each
/// verified, together with the names of the Log generators created for them.
struct UnitDerivChain {
  std::vector<Elem> chain;
  std::vector<std::string> added;
};

namespace detail {

inline bool has_gen_name(const Tower& t, const std::string& name) {
  for (const auto& s : t.slots())
    if (s.name == name) return true;
  return false;
}

inline std::size_t base_slot(const Tower& t) {
  for (std::size_t i = 0; i < t.depth(); ++i)
    if (t.slots()[i].kind == GenKind::Base) return i;
  throw PreconditionViolated(
      "tower has no transcendental base generator with derivative 1");
}

}  // namespace detail

/// Extend the tower with Log generators zeta_{j+1} with dlog argument u_j and
/// set u_{j+1} = zeta_{j+1}/c_j, c_j = -(d^{p^j}u_j)^p / u_j^p; then
/// derive_n(u_{j+1}, p^{j+1}) = 1.  Each level is checked by brute force.
inline std::pair<Tower, UnitDerivChain> build_unit_chain(const Tower& t,
                                                         unsigned k) {
  Tower t2 = t;
  UnitDerivChain out;
  out.chain.push_back(t.gen(detail::base_slot(t)));
  std::uint64_t q = 1;  // p^j
  for (unsigned j = 0; j < k; ++j) {
    const Elem& u = out.chain.back();
    std::string name = "zeta" + std::to_string(j + 1);
    while (detail::has_gen_name(t2, name)) name += "_";
    t2 = t2.with_log(name, u);
    for (Elem& c : out.chain) c = c.lifted();
    Elem zeta = t2.gen(name);
    Elem du = t2.derive_n(out.chain[j], static_cast<std::size_t>(q));
    Elem c = -(du.pow(static_cast<std::int64_t>(t.p())) /
               out.chain[j].pow(static_cast<std::int64_t>(t.p())));
    if (!t2.is_constant(c))
      throw PreconditionViolated("internal: unit chain scale is not constant");
    out.chain.push_back(zeta / c);
    out.added.push_back(name);
    q *= t.p();
    if (t2.derive_n(out.chain.back(), static_cast<std::size_t>(q)) != t2.one())
      throw PreconditionViolated("internal: unit chain level failed its check");
  }
  return {std::move(t2), std::move(out)};
}

/// An element z (of a possibly extended tower) with derive_n(z, n) = 1:
/// z = d^{p^k - n}(u_k) for the minimal k with p^k >= n.
inline std::pair<Tower, Elem> unit_nth(const Tower& t, std::size_t n) {
  if (n == 0) throw PreconditionViolated("unit_nth needs n >= 1");
  unsigned k = 0;
  std::uint64_t q = 1;
  while (q < n) {
    q *= t.p();
    ++k;
  }
  auto [t2, ch] = build_unit_chain(t, k);
  return {t2, t2.derive_n(ch.chain.back(), static_cast<std::size_t>(q - n))};
}

/// Constants c_0..c_{n-1} with w = sum c_i d^{i+1}(z), given derive_n(w,n)=0
/// and derive_n(z,n)=1.  Peeling d^{n-1-k} of the remainder w - sum c_i
/// d^{i+1}(z) gives c_k; expanding the remainder keeps all derivations on the
/// two cached chains instead of on growing mixed elements.
inline std::vector<Elem> logpol_coefficients(const Tower& t, const Elem& w,
                                             const Elem& z, std::size_t n) {
  DerivChain wc(t, w), zc(t, z);
  if (!wc.at(n).is_zero())
    throw PreconditionViolated("logpol: d^n(w) != 0");
  if (zc.at(n) != t.one())
    throw PreconditionViolated("logpol: d^n(z) != 1");
  std::vector<Elem> c;
  c.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Elem ck = wc.at(n - 1 - k);
    for (std::size_t i = 0; i < k; ++i)
      if (!c[i].is_zero()) ck = ck - c[i] * zc.at(n - k + i);
    if (!t.is_constant(ck))
      throw PreconditionViolated("internal: logpol coefficient not constant");
    c.push_back(std::move(ck));
  }
  return c;
}

/// An exact antiderivative, possibly in a logarithmic extension of the input
/// tower.
struct AntiderivResult {
  Tower extended_tower;                 // equals the input when no extension
  Elem value;                           // derive(extended_tower, value) = u
  std::vector<std::pair<std::string, Elem>> new_generators;  // name, dlog arg
  PPoly certificate;                    // the relation the construction used
};

/// Antiderivative of u.  With the lowest-order term of the p-power relation
/// isolated as d^m(u) = sum a_i d^{m+i}(u), the element v = sum a_i d^{i-1}(u)
/// has w = d(v) - u killed by d^m; w is then an explicit constant combination
/// of derivatives of a unit-chain element z, and v minus its antiderivative
/// part works.  The result is verified by derivation before returning.
inline AntiderivResult integrate(const Tower& t, const Elem& u,
                                 unsigned j_max) {
  PPoly rel = p_annihilator(t, u, j_max);
  const auto& terms = rel.terms();
  const std::size_t m = terms.front().first;
  const Elem cm_inv = terms.front().second.inv();

  DerivChain uc(t, u);
  Elem v = t.zero();
  for (std::size_t s = 1; s < terms.size(); ++s) {
    const std::size_t i = terms[s].first - m;  // relation index, >= 1
    v = v + (-(terms[s].second * cm_inv)) * uc.at(i - 1);
  }
  Elem w = t.derive(v) - u;

  std::size_t n = 0;
  DerivChain wc(t, w);
  while (n <= m && !wc.at(n).is_zero()) ++n;
  if (n > m)
    throw PreconditionViolated("internal: d^m(w) != 0 after term isolation");

  AntiderivResult res{t, v, {}, rel};
  if (n > 0) {
    auto [t2, z] = unit_nth(t, n);
    Elem w2 = t2.lift(w);
    std::vector<Elem> c = logpol_coefficients(t2, w2, z, n);
    DerivChain zc(t2, z);
    Elem val = t2.lift(v);
    for (std::size_t i = 0; i < n; ++i)
      if (!c[i].is_zero()) val = val - t2.lift(c[i]) * zc.at(i);
    for (std::size_t s = t.depth(); s < t2.depth(); ++s)
      res.new_generators.emplace_back(t2.slots()[s].name, t2.slots()[s].arg);
    res.extended_tower = std::move(t2);
    res.value = std::move(val);
  }
  if (res.extended_tower.derive(res.value) != res.extended_tower.lift(u))
    throw PreconditionViolated("internal: antiderivative failed verification");
  return res;
}
inline AntiderivResult integrate(const Tower& t, const Elem& u) {
  return integrate(t, u, default_j_max(t));
}

}  // namespace charp

#endif  // CHARP_ANTIDERIV_HPP
