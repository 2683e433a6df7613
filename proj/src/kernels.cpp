#include "sbsplit/matrix.hpp"

namespace sbsplit::kernels {

namespace {
void bareiss_row(std::vector<Int>& row, const std::vector<Int>& piv, std::size_t c, const Int& prev) {
  if (row[c] == 0) {
    // a[i][j] <- a[r][c] a[i][j] / prev
    for (std::size_t j = c + 1; j < row.size(); ++j)
      if (row[j] != 0) {
        row[j] *= piv[c];
        mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
      }
    return;
  }
  Int t;
  for (std::size_t j = c + 1; j < row.size(); ++j) {
    t = piv[c] * row[j];
    if (piv[j] != 0) t -= row[c] * piv[j];
    mpz_divexact(row[j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
  }
  row[c] = 0;
}
}  // namespace

void bareiss_step_serial(std::vector<std::vector<Int>>& a, std::size_t r, std::size_t c, const Int& prev) {
  for (std::size_t i = r + 1; i < a.size(); ++i) bareiss_row(a[i], a[r], c, prev);
}

void bareiss_step_omp(std::vector<std::vector<Int>>& a, std::size_t r, std::size_t c, const Int& prev) {
  const long n = static_cast<long>(a.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = static_cast<long>(r) + 1; i < n; ++i) bareiss_row(a[i], a[r], c, prev);
}

}  // namespace sbsplit::kernels
