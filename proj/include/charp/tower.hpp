#ifndef CHARP_TOWER_HPP
#define CHARP_TOWER_HPP

#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charp/elem.hpp"
#include "charp/matrix.hpp"

namespace charp {

/// Kind of a tower generator, as specified by the user.  Internally Exp(u) is
/// derived like HyperExp(∂u) and Log(u) like Primitive(∂u/u); the original
/// kind and argument are kept for provenance and printing.
enum class GenKind { Base, Primitive, Log, HyperExp, Exp, LinearBlock };

inline const char* gen_kind_name(GenKind k) {
  switch (k) {
    case GenKind::Base: return "base";
    case GenKind::Primitive: return "primitive";
    case GenKind::Log: return "log";
    case GenKind::HyperExp: return "hyperexp";
    case GenKind::Exp: return "exp";
    case GenKind::LinearBlock: return "linear_block";
  }
  return "?";
}

/// Tower of differential fields over F_p.  Immutable: extension returns a new
/// tower whose element heights are one (or, for a linear block, several) more.
/// Elements of a tower are Elems of height == depth().
class Tower {
 public:
  struct Slot {
    std::string name;
    GenKind kind;
    Elem arg;        // defining argument at definition-time height (unused for Base)
    Elem drule;      // ∂(generator), at the height the rule resolved at
    std::size_t block_id = 0;     // > 0 for LinearBlock members
    std::size_t block_index = 0;  // position within the block
    std::vector<Elem> block_row;  // matrix row, for LinearBlock members
  };

  explicit Tower(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw BadTowerSpec("p = " + std::to_string(p) + " is not prime");
  }

  std::uint64_t p() const { return p_; }
  std::size_t depth() const { return slots_.size(); }
  const std::vector<Slot>& slots() const { return slots_; }

  std::optional<std::size_t> slot_of(const std::string& name) const {
    for (std::size_t i = 0; i < slots_.size(); ++i)
      if (slots_[i].name == name) return i;
    return std::nullopt;
  }
  bool has_base() const {
    for (const Slot& s : slots_)
      if (s.kind == GenKind::Base) return true;
    return false;
  }

  // ---- element construction ----

  Elem zero() const { return lift(Elem(Fp(0, p_))); }
  Elem one() const { return lift(Elem(Fp(1, p_))); }
  Elem from_int(std::int64_t v) const { return lift(Elem(Fp(v, p_))); }

  /// The generator of the given slot, as a full-height element.
  Elem gen(std::size_t slot) const {
    assert(slot < slots_.size());
    Elem below = one_at(slot);
    Elem g = Elem::raw(Poly<Elem>::x(below), Poly<Elem>::one(below));
    return lift(g);
  }
  Elem gen(const std::string& name) const {
    auto s = slot_of(name);
    if (!s) throw UnknownVariable(name);
    return gen(*s);
  }

  /// Lift an element of a prefix of this tower to full height.
  Elem lift(Elem e) const {
    assert(e.p() == p_ && e.height() <= static_cast<int>(depth()));
    while (e.height() < static_cast<int>(depth())) e = e.lifted();
    return e;
  }

  // ---- extensions ----

  Tower with_base(const std::string& name) const {
    if (has_base()) throw BadTowerSpec("tower already has a base generator");
    Tower t = appended(name, GenKind::Base, zero());
    t.slots_.back().drule = t.one();
    return t;
  }
  /// ∂t = f
  Tower with_primitive(const std::string& name, const Elem& f) const {
    Tower t = appended(name, GenKind::Primitive, f);
    t.slots_.back().drule = lift(f).lifted();
    return t;
  }
  /// ∂t = ∂(u)/u, the formal log(u); requires u != 0.
  Tower with_log(const std::string& name, const Elem& u) const {
    if (u.is_zero()) throw BadTowerSpec("log of zero");
    Elem ul = lift(u);
    Tower t = appended(name, GenKind::Log, u);
    t.slots_.back().drule = (derive(ul) / ul).lifted();
    return t;
  }
  /// ∂t = f * t
  Tower with_hyperexp(const std::string& name, const Elem& f) const {
    Tower t = appended(name, GenKind::HyperExp, f);
    t.slots_.back().drule = lift(f).lifted() * t.gen(t.depth() - 1);
    return t;
  }
  /// ∂t = ∂(u) * t, the formal exp(u).
  Tower with_exp(const std::string& name, const Elem& u) const {
    Tower t = appended(name, GenKind::Exp, u);
    t.slots_.back().drule = derive(lift(u)).lifted() * t.gen(t.depth() - 1);
    return t;
  }
  Tower extended(const std::string& name, GenKind kind, const Elem& arg) const {
    switch (kind) {
      case GenKind::Base: return with_base(name);
      case GenKind::Primitive: return with_primitive(name, arg);
      case GenKind::Log: return with_log(name, arg);
      case GenKind::HyperExp: return with_hyperexp(name, arg);
      case GenKind::Exp: return with_exp(name, arg);
      case GenKind::LinearBlock:
        throw BadTowerSpec("linear blocks are added with with_linear_block");
    }
    throw BadTowerSpec("unknown generator kind");
  }

  /// Block of generators Y_0..Y_{m-1} with ∂Y_i = Σ_j M(i,j) * Y_j,
  /// M over this tower.
  Tower with_linear_block(const std::vector<std::string>& names,
                          const Matrix<Elem>& m) const {
    const std::size_t n = names.size();
    if (n == 0 || m.rows() != n || m.cols() != n)
      throw BadTowerSpec("linear block needs a square matrix matching the name count");
    Tower t = *this;
    std::size_t block = next_block_id();
    std::size_t base_slot = depth();
    for (std::size_t i = 0; i < n; ++i) {
      t = t.appended_on(std::move(t), names[i], GenKind::LinearBlock, zero());
      Slot& s = t.slots_.back();
      s.block_id = block;
      s.block_index = i;
      for (std::size_t j = 0; j < n; ++j) s.block_row.push_back(m.at(i, j));
    }
    // rules resolve once all members exist
    for (std::size_t i = 0; i < n; ++i) {
      Elem r = t.zero();
      for (std::size_t j = 0; j < n; ++j)
        r = r + t.lift(m.at(i, j)) * t.gen(base_slot + j);
      t.slots_[base_slot + i].drule = r;
    }
    return t;
  }

  // ---- derivation ----

  /// ∂(generator of the given slot) at full height.
  Elem gen_derivative(std::size_t slot) const {
    assert(slot < slots_.size());
    return lift(slots_[slot].drule);
  }

  Elem derive(const Elem& e) const {
    assert(e.height() == static_cast<int>(depth()));
    // Self-contained rules (∂ maps each subfield into itself) admit a
    // per-level path with one reduction per level; linear-block members may
    // reference later generators of their block and take the general path.
    for (std::size_t i = 0; i < slots_.size(); ++i)
      if (slots_[i].drule.height() > static_cast<int>(i) + 1) return d_rec(e);
    return lift(d_fast(e));
  }

  Elem derive_n(const Elem& e, std::size_t n) const {
    Elem r = e;
    for (std::size_t i = 0; i < n; ++i) r = derive(r);
    return r;
  }

  bool is_constant(const Elem& e) const { return derive(e).is_zero(); }

 private:
  Tower() = default;

  Elem one_at(std::size_t height) const {
    Elem e = Elem(Fp(1, p_));
    for (std::size_t i = 0; i < height; ++i) e = e.lifted();
    return e;
  }

  Tower appended(const std::string& name, GenKind kind, const Elem& arg) const {
    Tower t = *this;
    return appended_on(std::move(t), name, kind, arg);
  }
  static Tower appended_on(Tower t, const std::string& name, GenKind kind,
                           const Elem& arg) {
    if (t.slot_of(name)) throw BadTowerSpec("duplicate generator name: " + name);
    if (arg.height() > static_cast<int>(t.depth()))
      throw BadTowerSpec("generator rule references a later generator");
    t.slots_.push_back(Slot{name, kind, arg, Elem(), 0, 0, {}});
    return t;
  }
  std::size_t next_block_id() const {
    std::size_t m = 0;
    for (const Slot& s : slots_) m = std::max(m, s.block_id);
    return m + 1;
  }

  // ∂ of an element of height h, returned at height h.  Requires every slot
  // below h to have a rule of height ≤ slot + 1.  For e = N/D in generator t
  // with ∂t = u/v, the derivative is assembled as a single fraction
  //   (v (N^∂ D − N D^∂) + u (N' D − N D')) / (v D²)
  // so each level reduces exactly once.
  Elem d_fast(const Elem& e) const {
    if (e.height() == 0) return Elem(Fp(0, p_));
    const std::size_t slot = static_cast<std::size_t>(e.height()) - 1;
    const Poly<Elem>& N = e.num();
    const Poly<Elem>& D = e.den();
    const Elem& unit = N.unit();
    Elem rule = slots_[slot].drule;
    while (rule.height() < e.height()) rule = rule.lifted();
    const Poly<Elem>& u = rule.num();
    const Poly<Elem>& v = rule.den();
    auto dcoeffs = [&](const Poly<Elem>& P) {
      std::vector<Elem> r;
      r.reserve(P.coeffs().size());
      for (const Elem& c : P.coeffs()) r.push_back(d_fast(c));
      return Poly<Elem>(std::move(r), unit);
    };
    Poly<Elem> Nc = dcoeffs(N), Nx = N.formal_derivative();
    Poly<Elem> A = v * Nc + u * Nx;  // v * (total derivative of N)
    if (D.is_one()) {
      if (A.is_zero()) return Elem::raw(A, Poly<Elem>::one(unit));
      return Elem(A, v);
    }
    Poly<Elem> Dc = dcoeffs(D), Dx = D.formal_derivative();
    Poly<Elem> B = v * Dc + u * Dx;  // v * (total derivative of D)
    if (B.is_zero()) {
      if (A.is_zero()) return Elem::raw(A, Poly<Elem>::one(unit));
      return Elem(A, v * D);
    }
    // ∂(N/D) = (A D - N B) / (v D²).  With g = gcd(D, B), D = g D̄, B = g B̄:
    // the numerator is g (A D̄ - N B̄), and since gcd(N, D) = gcd(D̄, B̄) = 1 no
    // factor of D̄ survives in it, so only the v g part still needs a gcd.
    Poly<Elem> g = poly_gcd(D, B);
    Poly<Elem> Dbar = g.is_one() ? D : poly_exact_div(D, g);
    Poly<Elem> Bbar = g.is_one() ? B : poly_exact_div(B, g);
    Poly<Elem> num = A * Dbar - N * Bbar;
    if (num.is_zero()) return Elem::raw(num, Poly<Elem>::one(unit));
    Poly<Elem> den0 = v * g;
    Poly<Elem> h = poly_gcd(num, den0);
    if (!h.is_one()) {
      num = poly_exact_div(num, h);
      den0 = poly_exact_div(den0, h);
    }
    return detail::reduced_monic(std::move(num), den0 * Dbar * Dbar);
  }

  // ∂ of an element of height h ≤ depth, returned at full height.
  Elem d_rec(const Elem& e) const {
    if (e.height() == 0) return zero();
    const std::size_t slot = static_cast<std::size_t>(e.height()) - 1;
    const Poly<Elem>& n = e.num();
    const Poly<Elem>& d = e.den();
    Elem t = gen(slot);
    Elem dt = gen_derivative(slot);
    auto dpoly = [&](const Poly<Elem>& poly) {
      // ∂(P(t)) = P^∂(t) + ∂t * P'(t), with P^∂ the coefficientwise derivative
      Elem coeffpart = zero();
      for (int j = poly.degree(); j >= 0; --j)
        coeffpart = coeffpart * t + d_rec(poly.coeff(j));
      if (dt.is_zero()) return coeffpart;
      Poly<Elem> fd = poly.formal_derivative();
      Elem ev = zero();
      for (int j = fd.degree(); j >= 0; --j) ev = ev * t + lift(fd.coeff(j));
      return coeffpart + dt * ev;
    };
    Elem dn = dpoly(n);
    if (d.is_one()) return dn;
    Elem dd = dpoly(d);
    Elem df = zero();
    for (int j = d.degree(); j >= 0; --j) df = df * t + lift(d.coeff(j));
    return (dn - lift(e) * dd) / df;
  }

  std::uint64_t p_ = 0;
  std::vector<Slot> slots_;
};

/// Caches the sequence (e, ∂e, ∂²e, ...) so consecutive orders are derived once.
class DerivChain {
 public:
  DerivChain(const Tower& t, Elem e) : t_(&t) { seq_.push_back(std::move(e)); }
  const Elem& at(std::size_t n) {
    while (seq_.size() <= n) seq_.push_back(t_->derive(seq_.back()));
    return seq_[n];
  }

 private:
  const Tower* t_;
  std::vector<Elem> seq_;
};

}  // namespace charp

#endif  // CHARP_TOWER_HPP
