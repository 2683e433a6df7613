#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sbsplit/rational.hpp"

namespace sbsplit {

/// Field-element hooks needed by the generic linear algebra. A "like" argument
/// carries whatever context the field needs (e.g. the number field of an element).
template <class T>
struct ScalarOps;

template <>
struct ScalarOps<Rat> {
  static Rat zero(const Rat&) { return Rat(0); }
  static Rat one(const Rat&) { return Rat(1); }
  static bool is_zero(const Rat& x) { return sgn(x) == 0; }
  static Rat from_rat(const Rat&, const Rat& q) { return q; }
  static Rat inv(const Rat& x) {
    if (sgn(x) == 0) throw PreconditionError("inverse of zero");
    return 1 / x;
  }
};

/// Dense row-major matrix over a field.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& zero = T()) {
    Matrix m(n, n, zero);
    T one = ScalarOps<T>::one(zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  static Matrix column(const std::vector<T>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  std::vector<T> col(std::size_t j) const {
    std::vector<T> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, zero_like());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    if (!square()) throw PreconditionError("trace of non-square matrix");
    T s = zero_like();
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!ScalarOps<T>::is_zero(x)) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!ScalarOps<T>::is_zero(a.data_[k] - b.data_[k])) return false;
    return true;
  }

  /// A zero with the same field context as this matrix's entries.
  T zero_like() const { return data_.empty() ? T() : ScalarOps<T>::zero(data_.front()); }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("matrix shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rat>;
using QVector = std::vector<Rat>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b);

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw PreconditionError("matrix-vector shape mismatch");
  std::vector<T> r(a.rows(), a.zero_like());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!ScalarOps<T>::is_zero(a(i, j))) r[i] += a(i, j) * v[j];
  return r;
}

template <class T>
bool is_zero_vector(const std::vector<T>& v) {
  for (const auto& x : v)
    if (!ScalarOps<T>::is_zero(x)) return false;
  return true;
}

/// Matrix whose columns are the given vectors.
template <class T>
Matrix<T> from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows, const T& zero) {
  Matrix<T> m(rows, cols.size(), zero);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

/// Matrix whose rows are the given vectors.
template <class T>
Matrix<T> from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols, const T& zero) {
  Matrix<T> m(rows.size(), cols, zero);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

/// Row-major flattening of a matrix into a vector.
template <class T>
std::vector<T> vec(const Matrix<T>& m) {
  return m.data();
}

template <class T>
Matrix<T> unvec(const std::vector<T>& v, std::size_t rows, std::size_t cols) {
  Matrix<T> m(rows, cols);
  m.data() = v;
  return m;
}

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

}  // namespace sbsplit

#include "sbsplit/kernels.hpp"

namespace sbsplit {

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  return kernels::matmul(a, b);
}

}  // namespace sbsplit
