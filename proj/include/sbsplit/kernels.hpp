#pragma once

// Data-parallel inner loops of the exact linear algebra. Every kernel has a serial
// reference version and an OpenMP version; they must produce identical results
// (tests/test_kernels.cpp), and the dispatchers pick the parallel one above a size
// threshold.

#include <cstddef>
#include <vector>

#include "sbsplit/rational.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sbsplit {

template <class T>
class Matrix;
template <class T>
struct ScalarOps;

namespace kernels {

/// Entry count above which the dispatchers switch to the OpenMP kernels.
inline constexpr std::size_t kParallelThreshold = 4096;

template <class T>
Matrix<T> matmul_serial(const Matrix<T>& a, const Matrix<T>& b);

template <class T>
Matrix<T> matmul_omp(const Matrix<T>& a, const Matrix<T>& b);

template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() * b.cols() * a.cols() >= kParallelThreshold * 8) return matmul_omp(a, b);
  return matmul_serial(a, b);
}

/// Gauss-Jordan step: clear column `pc` in every row except `pr`, assuming row `pr`
/// has a unit pivot at `pc` and zeros left of it.
template <class T>
void eliminate_column_serial(Matrix<T>& m, std::size_t pr, std::size_t pc);

template <class T>
void eliminate_column_omp(Matrix<T>& m, std::size_t pr, std::size_t pc);

template <class T>
void eliminate_column(Matrix<T>& m, std::size_t pr, std::size_t pc) {
  if (m.rows() * m.cols() >= kParallelThreshold)
    eliminate_column_omp(m, pr, pc);
  else
    eliminate_column_serial(m, pr, pc);
}

/// Fraction-free (Bareiss) step on an integer matrix stored as rows: for all rows
/// below `r`, a[i][j] <- (a[r][c] a[i][j] - a[i][c] a[r][j]) / prev for j > c.
void bareiss_step_serial(std::vector<std::vector<Int>>& a, std::size_t r, std::size_t c, const Int& prev);
void bareiss_step_omp(std::vector<std::vector<Int>>& a, std::size_t r, std::size_t c, const Int& prev);

}  // namespace kernels
}  // namespace sbsplit

// Template definitions need the complete Matrix type.
#include "sbsplit/kernels_impl.hpp"
