#pragma once

namespace sbsplit::kernels {

template <class T>
Matrix<T> matmul_serial(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw PreconditionError("matmul shape mismatch");
  T zero = a.zero_like();
  Matrix<T> c(a.rows(), b.cols(), zero);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (ScalarOps<T>::is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!ScalarOps<T>::is_zero(b(k, j))) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> matmul_omp(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw PreconditionError("matmul shape mismatch");
  T zero = a.zero_like();
  Matrix<T> c(a.rows(), b.cols(), zero);
  const long rows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (ScalarOps<T>::is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!ScalarOps<T>::is_zero(b(k, j))) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
void eliminate_column_serial(Matrix<T>& m, std::size_t pr, std::size_t pc) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i == pr || ScalarOps<T>::is_zero(m(i, pc))) continue;
    T f = m(i, pc);
    for (std::size_t j = pc; j < m.cols(); ++j)
      if (!ScalarOps<T>::is_zero(m(pr, j))) m(i, j) -= f * m(pr, j);
  }
}

template <class T>
void eliminate_column_omp(Matrix<T>& m, std::size_t pr, std::size_t pc) {
  const long rows = static_cast<long>(m.rows());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < rows; ++i) {
    if (static_cast<std::size_t>(i) == pr || ScalarOps<T>::is_zero(m(i, pc))) continue;
    T f = m(i, pc);
    for (std::size_t j = pc; j < m.cols(); ++j)
      if (!ScalarOps<T>::is_zero(m(pr, j))) m(i, j) -= f * m(pr, j);
  }
}

}  // namespace sbsplit::kernels
