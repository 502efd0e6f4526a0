#ifndef CHARP_ANNIHILATOR_HPP
#define CHARP_ANNIHILATOR_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "charp/frobenius.hpp"
#include "charp/matrix.hpp"
#include "charp/operators.hpp"
#include "charp/tower.hpp"

namespace charp {

/// Default search bound for the p-power order: the theoretical bound is
/// dim_{K^p} K = p^k (k generators), but worked examples resolve by k + 1.
inline unsigned default_j_max(const Tower& t) {
  return static_cast<unsigned>(t.depth()) + 3;
}

namespace detail {

inline std::string theoretical_bound_string(const Tower& t) {
  return "p^k = " + std::to_string(t.p()) + "^" + std::to_string(t.depth());
}

/// First K^p-linear dependence among the given columns of stacked values:
/// finds b with sum_j b_j^p * column_j = 0 (componentwise), nonzero, with a
/// nonzero coefficient on the last column.  Mechanism: Frobenius-decompose
/// every entry; sum_j (b_j g_j)^p m_e vanishes iff each ordinary K-linear sum
/// over the preimages does, so matrix_kernel over K decides.
inline std::vector<Elem> kp_dependence(const Tower& t,
                                       const std::vector<std::vector<Elem>>& cols) {
  const std::size_t nc = cols.size();
  const std::size_t stack = cols.empty() ? 0 : cols[0].size();
  // rows indexed by (stack position, frobenius multi-exponent)
  std::map<std::pair<std::size_t, FrobExpo>, std::vector<Elem>> rows;
  for (std::size_t j = 0; j < nc; ++j)
    for (std::size_t s = 0; s < stack; ++s)
      for (auto& [expo, g] : frobenius_decompose(t, cols[j][s]).terms) {
        auto it = rows.find({s, expo});
        if (it == rows.end())
          it = rows.emplace(std::make_pair(s, expo),
                            std::vector<Elem>(nc, t.zero())).first;
        it->second[j] = g;
      }
  Matrix<Elem> m(rows.size(), nc, t.one());
  std::size_t r = 0;
  for (auto& [key, row] : rows) {
    (void)key;
    for (std::size_t j = 0; j < nc; ++j) m.at(r, j) = row[j];
    ++r;
  }
  for (auto& k : matrix_kernel(m)) {
    if (k.back().is_zero()) continue;
    for (Elem& b : k) b = b.pow(static_cast<std::int64_t>(t.p()));
    return k;
  }
  return {};
}

inline PPoly verified_ppoly(const Tower& t, const std::vector<std::size_t>& orders,
                            const std::vector<Elem>& c,
                            const std::vector<Elem>& ys) {
  std::vector<std::pair<std::size_t, Elem>> terms;
  for (std::size_t j = 0; j < orders.size(); ++j)
    if (!c[j].is_zero()) terms.emplace_back(orders[j], c[j]);
  PPoly p(std::move(terms));
  for (const auto& [o, a] : p.terms()) {
    (void)o;
    if (!t.is_constant(a))
      throw PreconditionViolated("internal: annihilator coefficient is not constant");
  }
  for (const Elem& y : ys)
    if (!p.apply(t, y).is_zero())
      throw PreconditionViolated("internal: annihilator failed verification");
  return p;
}

}  // namespace detail

/// Smallest-p-power-order relation c_0 y + sum c_j ∂^{p^j}(y) = 0 with
/// constant coefficients; support {0} ∪ {p^j}.  Verified before returning.
inline PPoly p_annihilator(const Tower& t, const Elem& y, unsigned j_max) {
  DerivChain chain(t, y);
  std::vector<std::size_t> orders{0};
  std::vector<std::vector<Elem>> cols{{y}};
  std::uint64_t q = 1;
  for (unsigned j = 0; j <= j_max; ++j) {
    orders.push_back(static_cast<std::size_t>(q));
    cols.push_back({chain.at(static_cast<std::size_t>(q))});
    std::vector<Elem> dep = detail::kp_dependence(t, cols);
    if (!dep.empty()) return detail::verified_ppoly(t, orders, dep, {y});
    q *= t.p();
  }
  throw BoundExceeded(j_max, detail::theoretical_bound_string(t));
}
inline PPoly p_annihilator(const Tower& t, const Elem& y) {
  return p_annihilator(t, y, default_j_max(t));
}

/// Common pure p-polynomial annihilator sum c_j ∂^{p^j} of all the elements
/// (no order-0 term, so the operator is a derivation commuting with ∂).
inline PPoly joint_annihilator(const Tower& t, const std::vector<Elem>& ys,
                               unsigned j_max) {
  std::vector<DerivChain> chains;
  chains.reserve(ys.size());
  for (const Elem& y : ys) chains.emplace_back(t, y);
  std::vector<std::size_t> orders;
  std::vector<std::vector<Elem>> cols;
  std::uint64_t q = 1;
  for (unsigned j = 0; j <= j_max; ++j) {
    orders.push_back(static_cast<std::size_t>(q));
    std::vector<Elem> col;
    col.reserve(ys.size());
    for (DerivChain& ch : chains) col.push_back(ch.at(static_cast<std::size_t>(q)));
    cols.push_back(std::move(col));
    std::vector<Elem> dep = detail::kp_dependence(t, cols);
    if (!dep.empty()) return detail::verified_ppoly(t, orders, dep, ys);
    q *= t.p();
  }
  throw BoundExceeded(j_max, detail::theoretical_bound_string(t));
}
inline PPoly joint_annihilator(const Tower& t, const std::vector<Elem>& ys) {
  return joint_annihilator(t, ys, default_j_max(t));
}

/// A_r = sum_{i=0}^r (∂^{p^i}(u))^{p^{r-i}}; the generator E of an Exp(u)
/// extension satisfies ∂^{p^r}(E) = A_r·E.
inline Elem carlitz_coefficient(const Tower& t, const Elem& u, unsigned r) {
  DerivChain chain(t, u);
  Elem acc = t.zero();
  std::uint64_t qi = 1;  // p^i
  std::uint64_t qe = 1;  // p^{r-i}, counted down
  for (unsigned i = 0; i < r; ++i) qe *= t.p();
  for (unsigned i = 0; i <= r; ++i) {
    acc = acc + chain.at(static_cast<std::size_t>(qi))
                    .pow(static_cast<std::int64_t>(qe));
    qi *= t.p();
    qe /= t.p();
  }
  return acc;
}

/// Output of the constant-coefficient reduction, with the intermediate
/// objects exposed for inspection.
struct ReduceResult {
  ConstOp op;            // Q ∘ P, annihilates every solution of the input
  PPoly p;               // joint annihilator of the input coefficients
  Matrix<Elem> d_matrix; // matrix of P(∂) on the basis (y, ∂y, ..., ∂^{n-1}y)
  Poly<Elem> min_poly;   // Q, with constant coefficients
};

/// Any solution y of sum u_i ∂^i y = 0 (u_i in the tower field) also solves a
/// constant-coefficient equation: with P the joint annihilator of the u_i,
/// D = P(∂) maps the solution space to itself; Q = min poly of its matrix on
/// the basis (y, ∂y, ..., ∂^{n-1}y) has constant coefficients, and Q∘P works.
inline ReduceResult reduce_to_constant_coeffs(const Tower& t, const SkewOp& op,
                                              unsigned j_max) {
  if (op.is_zero() || op.order() < 1)
    throw PreconditionViolated("operator of order >= 1 required");
  const std::size_t n = static_cast<std::size_t>(op.order());
  // monic relation ∂^n y = -sum_{i<n} a_i ∂^i y
  const Elem li = op.lead().inv();
  std::vector<Elem> a;
  a.reserve(n);
  bool all_const = true;
  for (std::size_t i = 0; i < n; ++i) {
    a.push_back(op.coeff(i) * li);
    if (!t.is_constant(a.back())) all_const = false;
  }
  if (all_const && t.is_constant(op.lead())) {
    std::vector<std::pair<std::size_t, Elem>> terms;
    for (std::size_t i = 0; i <= n; ++i)
      if (!op.coeff(i).is_zero()) terms.emplace_back(i, op.coeff(i));
    return {ConstOp(std::move(terms)), PPoly(), Matrix<Elem>(0, 0, t.one()),
            Poly<Elem>::zero(t.one())};
  }

  PPoly p = joint_annihilator(t, a, j_max);
  const std::size_t top = p.order();

  // rep[k] = coefficients of ∂^k y over (y, ..., ∂^{n-1} y), reduced modulo
  // the relation
  std::vector<std::vector<Elem>> rep;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Elem> e(n, t.zero());
    e[k] = t.one();
    rep.push_back(std::move(e));
  }
  while (rep.size() < top + n) {
    const std::vector<Elem>& v = rep.back();
    std::vector<Elem> w(n, t.zero());
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = t.derive(v[i]) - v[n - 1] * a[i];
      if (i > 0) w[i] = w[i] + v[i - 1];
    }
    rep.push_back(std::move(w));
  }

  Matrix<Elem> m(n, n, t.one());
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [o, c] : p.terms())
      for (std::size_t i = 0; i < n; ++i)
        m.at(i, j) = m.at(i, j) + c * rep[o + j][i];

  Poly<Elem> q = matrix_min_poly(m);
  for (const Elem& c : q.coeffs())
    if (!t.is_constant(c)) throw NonConstantMinPoly();

  // compose Q(P(T)): both have constant coefficients, so ordinary polynomial
  // composition matches operator composition
  Poly<Elem> pt = p.as_poly(t.one());
  Poly<Elem> acc = Poly<Elem>::zero(t.one());
  for (std::size_t i = q.coeffs().size(); i-- > 0;)
    acc = acc * pt + Poly<Elem>::constant(q.coeffs()[i], t.one());
  return {ConstOp::from_poly(acc), std::move(p), std::move(m), std::move(q)};
}
inline ReduceResult reduce_to_constant_coeffs(const Tower& t, const SkewOp& op) {
  return reduce_to_constant_coeffs(t, op, default_j_max(t));
}

}  // namespace charp

#endif  // CHARP_ANNIHILATOR_HPP
