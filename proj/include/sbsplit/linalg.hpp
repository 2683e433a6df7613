#pragma once

// Exact dense linear algebra over a field: reduced row echelon form, kernels,
// solving, inverses, determinants and characteristic polynomials.

#include <optional>
#include <type_traits>
#include <vector>

#include "sbsplit/matrix.hpp"

namespace sbsplit {

template <class T>
struct Echelon {
  Matrix<T> rref;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Above this many entries, rational matrices are reduced fraction-free.
inline constexpr std::size_t kBareissThreshold = 10000;

namespace detail {

template <class T>
Echelon<T> gauss_jordan(Matrix<T> m) {
  Echelon<T> e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && ScalarOps<T>::is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    T inv = ScalarOps<T>::inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    kernels::eliminate_column(m, r, c);
    e.pivots.push_back(c);
    ++r;
  }
  e.rref = std::move(m);
  return e;
}

Echelon<Rat> bareiss_rref(const Matrix<Rat>& m);

}  // namespace detail

/// Unique reduced row echelon form; pivots are the first nonzero entry of each column
/// scan. Large rational inputs go through fraction-free elimination first.
template <class T>
Echelon<T> rref(const Matrix<T>& m) {
  if constexpr (std::is_same_v<T, Rat>) {
    if (m.rows() * m.cols() > kBareissThreshold) return detail::bareiss_rref(m);
  }
  return detail::gauss_jordan(m);
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return rref(m).rank();
}

/// Basis of {v : m v = 0}, one vector per free column, with a 1 in that column.
template <class T>
std::vector<std::vector<T>> kernel_basis(const Echelon<T>& e) {
  const auto& r = e.rref;
  T zero = r.zero_like();
  T one = ScalarOps<T>::one(zero);
  std::vector<bool> is_pivot(r.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < r.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(r.cols(), zero);
    v[f] = one;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
std::vector<std::vector<T>> kernel_basis(const Matrix<T>& m) {
  return kernel_basis(rref(m));
}

/// Some x with a x = b, or nothing if the system is inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
  if (b.size() != a.rows()) throw PreconditionError("solve: shape mismatch");
  T zero = a.zero_like();
  Matrix<T> aug(a.rows(), a.cols() + 1, zero);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  std::vector<T> x(a.cols(), zero);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.rref(i, a.cols());
  return x;
}

/// Solves a X = B for all columns of B at once.
template <class T>
std::optional<Matrix<T>> solve_many(const Matrix<T>& a, const Matrix<T>& b) {
  if (b.rows() != a.rows()) throw PreconditionError("solve_many: shape mismatch");
  T zero = a.zero_like();
  Matrix<T> aug(a.rows(), a.cols() + b.cols(), zero);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
  }
  auto e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() >= a.cols()) return std::nullopt;
  Matrix<T> x(a.cols(), b.cols(), zero);
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.rref(i, a.cols() + j);
  return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  if (!a.square()) throw PreconditionError("inverse of non-square matrix");
  const std::size_t n = a.rows();
  T zero = a.zero_like();
  T one = ScalarOps<T>::one(zero);
  Matrix<T> aug(n, 2 * n, zero);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = one;
  }
  auto e = rref(aug);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<T> x(n, n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = e.rref(i, n + j);
  return x;
}

template <class T>
T determinant(Matrix<T> m) {
  if (!m.square()) throw PreconditionError("determinant of non-square matrix");
  T det = ScalarOps<T>::one(m.zero_like());
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && ScalarOps<T>::is_zero(m(p, c))) ++p;
    if (p == n) return m.zero_like();
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    T inv = ScalarOps<T>::inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (ScalarOps<T>::is_zero(m(i, c))) continue;
      T f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!ScalarOps<T>::is_zero(m(c, j))) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Characteristic polynomial det(x I - m), lowest degree first, by Faddeev-LeVerrier.
template <class T>
std::vector<T> char_poly_coeffs(const Matrix<T>& a) {
  if (!a.square()) throw PreconditionError("char_poly of non-square matrix");
  const std::size_t n = a.rows();
  T zero = a.zero_like();
  T one = ScalarOps<T>::one(zero);
  std::vector<T> c(n + 1, zero);
  c[n] = one;
  Matrix<T> mk(n, n, zero);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<T> next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    T tr = (a * mk).trace();
    c[n - k] = -tr * ScalarOps<T>::from_rat(zero, Rat(1, static_cast<long>(k)));
  }
  return c;
}

/// Row space basis (nonzero rows of the rref) as vectors.
template <class T>
std::vector<std::vector<T>> row_space(const Matrix<T>& m) {
  auto e = rref(m);
  std::vector<std::vector<T>> rows;
  for (std::size_t i = 0; i < e.rank(); ++i) {
    auto r = e.rref.row(i);
    rows.emplace_back(r.begin(), r.end());
  }
  return rows;
}

/// LLL reduction (delta = 3/4) of linearly independent integer rows, exact rational
/// Gram-Schmidt. When `transform` is given it receives U with reduced = U * input.
std::vector<std::vector<Int>> lll_reduce(std::vector<std::vector<Int>> rows,
                                         std::vector<std::vector<Int>>* transform = nullptr);

/// Hermite basis (upper triangular, r rows) of the lattice spanned by `rows` and d Z^r.
std::vector<std::vector<Int>> hnf_mod(std::vector<std::vector<Int>> rows, std::size_t r, const Int& d);

/// LLL-reduced basis of {v in Z^n : m v = 0}.
std::vector<std::vector<Int>> saturated_kernel(const Matrix<Rat>& m);

}  // namespace sbsplit
