#ifndef CHARP_MATRIX_HPP
#define CHARP_MATRIX_HPP

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

#include "charp/poly.hpp"

namespace charp {

/// Rectangular matrix over an abstract field F.
template <class F>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, F unit)
      : rows_(rows), cols_(cols), unit_(std::move(unit)),
        a_(rows * cols, unit_.zero_like()) {}

  static Matrix identity(std::size_t n, const F& unit) {
    Matrix m(n, n, unit);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = unit;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const F& unit() const { return unit_; }

  F& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const F& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.rows_);
    Matrix r(a.rows_, b.cols_, a.unit_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
      }
    return r;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    Matrix r(a.rows_, a.cols_, a.unit_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
    return r;
  }
  Matrix scaled(const F& s) const {
    Matrix r(rows_, cols_, unit_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
  }
  bool is_zero() const {
    for (const F& v : a_)
      if (!v.is_zero()) return false;
    return true;
  }
  std::vector<F> apply(const std::vector<F>& v) const {
    assert(v.size() == cols_);
    std::vector<F> r(rows_, unit_.zero_like());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero()) r[i] = r[i] + at(i, j) * v[j];
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_, cols_;
  F unit_;
  std::vector<F> a_;
};

/// Basis of the right null space, by Gauss-Jordan elimination.  Pivots are
/// chosen at the lowest available column index, so the output is deterministic.
template <class F>
std::vector<std::vector<F>> matrix_kernel(const Matrix<F>& m) {
  const F zero = m.unit().zero_like();
  std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<F>> a(rows, std::vector<F>(cols, zero));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m.at(i, j);

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!a[i][c].is_zero()) { sel = i; break; }
    if (sel == rows) continue;
    std::swap(a[r], a[sel]);
    F inv = a[r][c].inv();
    for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      F f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }

  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<F> v(cols, zero);
    v[c] = m.unit();
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      v[pivot_col[i]] = -a[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Monic minimal polynomial of a square matrix: lcm of the local minimal
/// polynomials of the standard basis vectors (Krylov sequences).
template <class F>
Poly<F> matrix_min_poly(const Matrix<F>& m) {
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  const F one = m.unit();
  Poly<F> acc = Poly<F>::one(one);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<F> v(n, one.zero_like());
    v[s] = one;
    // Krylov sequence v, Mv, M^2 v, ... ; first linear dependence gives the
    // local minimal polynomial of v.
    std::vector<std::vector<F>> krylov{v};
    for (std::size_t d = 1; d <= n; ++d)
      krylov.push_back(m.apply(krylov.back()));
    Poly<F> local = Poly<F>::zero(one);
    for (std::size_t d = 1; d <= n; ++d) {
      // solve sum_{i<d} x_i * krylov[i] = krylov[d]
      Matrix<F> sys(n, d + 1, one);
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < n; ++i) sys.at(i, j) = krylov[j][i];
      for (std::size_t i = 0; i < n; ++i) sys.at(i, d) = krylov[d][i];
      auto ker = matrix_kernel(sys);
      for (const auto& k : ker) {
        if (k[d].is_zero()) continue;
        // k gives sum_j k_j * krylov[j] + k_d * krylov[d] = 0, so the monic
        // local minimal polynomial is X^d + sum_j (k_j / k_d) X^j.
        F inv = k[d].inv();
        std::vector<F> cs;
        cs.reserve(d + 1);
        for (std::size_t j = 0; j < d; ++j) cs.push_back(k[j] * inv);
        cs.push_back(one);
        local = Poly<F>(std::move(cs), one);
        break;
      }
      if (!local.is_zero()) break;
    }
    assert(!local.is_zero());
    acc = poly_lcm(acc, local);
    if (acc.degree() == static_cast<int>(n)) break;
  }
  return acc;
}

}  // namespace charp

#endif  // CHARP_MATRIX_HPP
