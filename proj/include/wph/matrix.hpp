#pragma once

// Dense matrices over an exact ring. Desk-scale complexes keep dimensions
// small, so simplicity and exactness win over sparsity.

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "wph/ring.hpp"

namespace wph {

template <class R>
struct Matrix {
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<R> e;  // row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), e(r * c, ring_traits<R>::zero()) {}
  Matrix(std::initializer_list<std::initializer_list<R>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    e.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (const auto& x : row) e.push_back(x);
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  R& at(std::size_t i, std::size_t j) { return e[i * cols_ + j]; }
  const R& at(std::size_t i, std::size_t j) const { return e[i * cols_ + j]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring_traits<R>::one();
    return m;
  }

  bool is_zero() const {
    for (const R& x : e)
      if (!ring_traits<R>::is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e == b.e;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (ring_traits<R>::is_zero(a.at(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          r.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return r;
  }

  std::vector<R> apply(const std::vector<R>& v) const {  // matrix * column vector
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<R> r(rows_, ring_traits<R>::zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!ring_traits<R>::is_zero(at(i, j))) r[i] += at(i, j) * v[j];
    return r;
  }

  std::vector<R> col(std::size_t j) const {
    std::vector<R> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
  }

  void set_col(std::size_t j, const std::vector<R>& v) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
  }

  static Matrix from_cols(std::size_t nrows, const std::vector<std::vector<R>>& cols) {
    Matrix m(nrows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != nrows) throw std::invalid_argument("column length mismatch");
      m.set_col(j, cols[j]);
    }
    return m;
  }

  // Horizontal concatenation [A | B].
  friend Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack row mismatch");
    Matrix r(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
    }
    return r;
  }

  // Rows [r0, r1) of this matrix.
  Matrix row_block(std::size_t r0, std::size_t r1) const {
    Matrix r(r1 - r0, cols_);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(i - r0, j) = at(i, j);
    return r;
  }
};

template <class R>
std::vector<R> vec_add(std::vector<R> a, const std::vector<R>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class R>
std::vector<R> vec_scale(std::vector<R> a, const R& c) {
  for (auto& x : a) x *= c;
  return a;
}

template <class R>
bool vec_is_zero(const std::vector<R>& a) {
  for (const auto& x : a)
    if (!ring_traits<R>::is_zero(x)) return false;
  return true;
}

}  // namespace wph
