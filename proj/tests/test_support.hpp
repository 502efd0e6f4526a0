#ifndef CHARP_TEST_SUPPORT_HPP
#define CHARP_TEST_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "charp/tower.hpp"

namespace charp::testing {

/// Random "polynomial" element: small combination of generator monomials.
inline Elem random_integral_elem(std::mt19937& rng, const Tower& t, int max_deg,
                                 int terms = 3) {
  Elem acc = t.zero();
  for (int i = 0; i < terms; ++i) {
    Elem m = t.from_int(static_cast<std::int64_t>(rng() % t.p()));
    for (std::size_t s = 0; s < t.depth(); ++s) {
      int d = static_cast<int>(rng() % (max_deg + 1));
      if (d) m = m * t.gen(s).pow(d);
    }
    acc = acc + m;
  }
  return acc;
}

inline Elem random_elem(std::mt19937& rng, const Tower& t, int max_deg) {
  Elem num = random_integral_elem(rng, t, max_deg);
  for (int tries = 0; tries < 10; ++tries) {
    Elem den = random_integral_elem(rng, t, max_deg);
    if (!den.is_zero()) return num / den;
  }
  return num;
}

inline Elem random_nonzero_elem(std::mt19937& rng, const Tower& t, int max_deg) {
  for (int tries = 0; tries < 20; ++tries) {
    Elem e = random_elem(rng, t, max_deg);
    if (!e.is_zero()) return e;
  }
  return t.one();
}

/// Random elementary tower: base X plus random primitive/log/hyperexp/exp
/// levels with small arguments.
inline Tower random_tower(std::mt19937& rng, std::uint64_t p, std::size_t extra_depth,
                          int arg_deg = 1) {
  Tower t = Tower(p).with_base("X");
  for (std::size_t i = 0; i < extra_depth; ++i) {
    std::string name = "t" + std::to_string(i + 1);
    switch (rng() % 4) {
      case 0:
        t = t.with_primitive(name, random_elem(rng, t, arg_deg));
        break;
      case 1:
        t = t.with_log(name, random_nonzero_elem(rng, t, arg_deg));
        break;
      case 2:
        t = t.with_hyperexp(name, random_elem(rng, t, arg_deg));
        break;
      default:
        t = t.with_exp(name, random_elem(rng, t, arg_deg));
        break;
    }
  }
  return t;
}

/// The introductory tower F_p(X, E) with ∂E = 2XE.
inline Tower intro_tower(std::uint64_t p) {
  Tower t = Tower(p).with_base("X");
  return t.with_hyperexp("E", t.from_int(2) * t.gen("X"));
}

/// The Airy tower F_3(X, Y, Y1) with ∂Y = Y1, ∂Y1 = XY.
inline Tower airy_tower(std::uint64_t p = 3) {
  Tower t = Tower(p).with_base("X");
  Matrix<Elem> m(2, 2, t.one());
  m.at(0, 1) = t.one();
  m.at(1, 0) = t.gen("X");
  return t.with_linear_block({"Y", "Y1"}, m);
}

}  // namespace charp::testing

#endif  // CHARP_TEST_SUPPORT_HPP
