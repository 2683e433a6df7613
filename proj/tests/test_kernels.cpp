#include "doctest.h"

#include "sbsplit/linalg.hpp"
#include "sbsplit/rng.hpp"

using namespace sbsplit;

namespace {

QMatrix random_rat_matrix(Rng& rng, std::size_t r, std::size_t c) {
  QMatrix m(r, c);
  for (auto& x : m.data()) x = Rat(rng.uniform(-50, 50), rng.uniform(1, 9));
  return m;
}

std::vector<std::vector<Int>> random_int_rows(Rng& rng, std::size_t n) {
  std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
  for (auto& row : a)
    for (auto& x : row) x = rng.uniform(-1000, 1000);
  return a;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("matmul: OpenMP equals serial") {
    Rng rng(5);
    for (std::size_t n : {3, 17, 40}) {
      QMatrix a = random_rat_matrix(rng, n, n + 2), b = random_rat_matrix(rng, n + 2, n);
      CHECK(kernels::matmul_omp(a, b) == kernels::matmul_serial(a, b));
    }
  }

  TEST_CASE("column elimination: OpenMP equals serial") {
    Rng rng(6);
    for (std::size_t n : {4, 30, 70}) {
      QMatrix m = random_rat_matrix(rng, n, n + 5);
      Rat inv = 1 / m(0, 0);
      for (std::size_t j = 0; j < m.cols(); ++j) m(0, j) *= inv;
      QMatrix s = m, p = m;
      kernels::eliminate_column_serial(s, 0, 0);
      kernels::eliminate_column_omp(p, 0, 0);
      CHECK(s == p);
      for (std::size_t i = 1; i < n; ++i) CHECK(sgn(s(i, 0)) == 0);
    }
  }

  TEST_CASE("Bareiss steps: OpenMP equals serial through a full elimination") {
    Rng rng(7);
    for (std::size_t n : {5, 25}) {
      const auto orig = random_int_rows(rng, n);
      auto s = orig, p = orig;
      Int prev_s = 1, prev_p = 1;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        REQUIRE(sgn(s[k][k]) != 0);
        kernels::bareiss_step_serial(s, k, k, prev_s);
        kernels::bareiss_step_omp(p, k, k, prev_p);
        prev_s = s[k][k];
        prev_p = p[k][k];
      }
      CHECK(s == p);
      // The last pivot of a fraction-free elimination is the determinant.
      QMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Rat(orig[i][j]);
      CHECK(Rat(p[n - 1][n - 1]) == determinant(m));
    }
  }
}
