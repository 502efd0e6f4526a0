#ifndef CHARP_FP_HPP
#define CHARP_FP_HPP

#include <cassert>
#include <cstdint>
#include <string>

#include "charp/errors.hpp"

namespace charp {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Element of the prime field F_p.  The modulus travels with the value; mixing
/// moduli is a programming error.
class Fp {
 public:
  Fp() = default;  // sentinel with p == 0, only valid as a placeholder
  Fp(std::int64_t v, std::uint64_t p) : p_(p) {
    assert(p > 0);
    std::int64_t m = v % static_cast<std::int64_t>(p);
    if (m < 0) m += static_cast<std::int64_t>(p);
    v_ = static_cast<std::uint64_t>(m);
  }

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp zero_like() const { return Fp(0, p_); }
  Fp one_like() const { return Fp(1, p_); }

  friend Fp operator+(const Fp& a, const Fp& b) {
    assert(a.p_ == b.p_);
    std::uint64_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return raw(s, a.p_);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    assert(a.p_ == b.p_);
    std::uint64_t s = a.v_ + a.p_ - b.v_;
    if (s >= a.p_) s -= a.p_;
    return raw(s, a.p_);
  }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
  friend Fp operator*(const Fp& a, const Fp& b) {
    assert(a.p_ == b.p_);
    return raw((a.v_ * b.v_) % a.p_, a.p_);
  }
  Fp inv() const {
    if (v_ == 0) throw DivisionByZero("inverse of 0 in F_p");
    // extended Euclid
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), nr = static_cast<std::int64_t>(v_);
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    return Fp(t, p_);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }

  Fp pow(std::uint64_t e) const {
    Fp acc = one_like(), base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_ && a.p_ == b.p_; }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  std::string str() const { return std::to_string(v_); }

 private:
  static Fp raw(std::uint64_t v, std::uint64_t p) {
    Fp f; f.v_ = v; f.p_ = p; return f;
  }
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

}  // namespace charp

#endif  // CHARP_FP_HPP
