#include "sbsplit/linalg.hpp"

namespace sbsplit::detail {

Echelon<Rat> bareiss_rref(const Matrix<Rat>& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  // Scaling a row by a nonzero integer leaves the row space, hence the rref, unchanged.
  std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    Int den = 1;
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(m(i, j)) != 0) den = lcm(den, m(i, j).get_den());
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(m(i, j)) != 0) a[i][j] = m(i, j).get_num() * (den / m(i, j).get_den());
  }

  std::vector<std::size_t> pivots;
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    if ((rows - r) * (cols - c) >= kernels::kParallelThreshold)
      kernels::bareiss_step_omp(a, r, c, prev);
    else
      kernels::bareiss_step_serial(a, r, c, prev);
    prev = a[r][c];
    pivots.push_back(c);
    ++r;
  }

  // Back substitution on the (small) echelon form.
  Matrix<Rat> out(pivots.size(), cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    Rat inv = Rat(1) / Rat(a[i][pivots[i]]);
    for (std::size_t j = pivots[i]; j < cols; ++j)
      if (a[i][j] != 0) out(i, j) = Rat(a[i][j]) * inv;
  }
  for (std::size_t i = pivots.size(); i-- > 0;) kernels::eliminate_column(out, i, pivots[i]);

  Echelon<Rat> e;
  e.rref = Matrix<Rat>(rows, cols);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) e.rref(i, j) = out(i, j);
  e.pivots = std::move(pivots);
  return e;
}

}  // namespace sbsplit::detail

namespace sbsplit {

namespace {

Rat dot(const std::vector<Int>& a, const std::vector<Rat>& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += a[i] * b[i];
  return s;
}

Int round_rat(const Rat& x) {
  Rat h = x + Rat(1, 2);
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  return q;
}

}  // namespace

std::vector<std::vector<Int>> lll_reduce(std::vector<std::vector<Int>> b, std::vector<std::vector<Int>>* transform) {
  const std::size_t n = b.size();
  std::vector<std::vector<Int>> u(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  if (n == 0) {
    if (transform) *transform = u;
    return b;
  }
  const std::size_t d = b[0].size();
  // Gram-Schmidt: bstar_i, squared norms bb_i and coefficients mu_ij.
  std::vector<std::vector<Rat>> bstar(n, std::vector<Rat>(d));
  std::vector<Rat> bb(n);
  std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) bstar[i][k] = b[i][k];
    for (std::size_t j = 0; j < i; ++j) {
      mu[i][j] = dot(b[i], bstar[j]) / bb[j];
      for (std::size_t k = 0; k < d; ++k)
        if (sgn(bstar[j][k]) != 0) bstar[i][k] -= mu[i][j] * bstar[j][k];
    }
    for (const auto& x : bstar[i]) bb[i] += x * x;
    if (sgn(bb[i]) == 0) throw PreconditionError("lll_reduce: rows are dependent");
  }
  auto reduce = [&](std::size_t k, std::size_t l) {
    if (abs(mu[k][l]) * 2 <= 1) return;
    Int q = round_rat(mu[k][l]);
    for (std::size_t c = 0; c < d; ++c) b[k][c] -= q * b[l][c];
    for (std::size_t c = 0; c < n; ++c) u[k][c] -= q * u[l][c];
    mu[k][l] -= q;
    for (std::size_t i = 0; i < l; ++i) mu[k][i] -= q * mu[l][i];
  };
  const Rat delta(3, 4);
  std::size_t k = 1;
  while (k < n) {
    reduce(k, k - 1);
    if (bb[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bb[k - 1]) {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      Rat m = mu[k][k - 1];
      Rat nb = bb[k] + m * m * bb[k - 1];
      mu[k][k - 1] = m * bb[k - 1] / nb;
      bb[k] = bb[k - 1] * bb[k] / nb;
      bb[k - 1] = nb;
      for (std::size_t i = k + 1; i < n; ++i) {
        Rat t = mu[i][k];
        mu[i][k] = mu[i][k - 1] - m * t;
        mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
      }
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
      ++k;
    }
  }
  if (transform) *transform = std::move(u);
  return b;
}

std::vector<std::vector<Int>> hnf_mod(std::vector<std::vector<Int>> pool, std::size_t r, const Int& d) {
  auto reduce_tail = [&](std::vector<Int>& v, std::size_t from) {
    for (std::size_t c = from; c < r; ++c) mpz_fdiv_r(v[c].get_mpz_t(), v[c].get_mpz_t(), d.get_mpz_t());
  };
  for (auto& v : pool) reduce_tail(v, 0);
  std::vector<std::vector<Int>> h;
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<Int> piv(r, 0);
    piv[j] = d;
    for (auto& v : pool) {
      if (sgn(v[j]) == 0) continue;
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), piv[j].get_mpz_t(), v[j].get_mpz_t());
      Int a = v[j] / g, b = piv[j] / g;
      for (std::size_t c = j; c < r; ++c) {
        Int p = s * piv[c] + t * v[c];
        v[c] = a * piv[c] - b * v[c];
        piv[c] = std::move(p);
      }
      reduce_tail(piv, j + 1);
      reduce_tail(v, j + 1);
    }
    // d e_j is now only implied by the pivot; keep the rest of (d / g) piv.
    std::vector<Int> extra(r, 0);
    Int f = d / piv[j];
    for (std::size_t c = j + 1; c < r; ++c) extra[c] = f * piv[c];
    reduce_tail(extra, j + 1);
    pool.push_back(std::move(extra));
    h.push_back(std::move(piv));
  }
  return h;
}

std::vector<std::vector<Int>> saturated_kernel(const Matrix<Rat>& m) {
  auto e = rref(m);
  auto ker = kernel_basis(e);
  const std::size_t r = ker.size(), n = m.cols();
  if (r == 0) return {};
  // v = sum a_f ker_f is integral iff a is integral and every pivot entry is: a lies in
  // the dual of the lattice spanned by Z^r and the pivot rows.
  Int d = 1;
  for (const auto& v : ker)
    for (const auto& x : v) d = lcm(d, Int(x.get_den()));
  std::vector<std::vector<Int>> gens;
  for (std::size_t i = 0; i < e.rank(); ++i) {
    std::vector<Int> g(r);
    for (std::size_t f = 0; f < r; ++f) g[f] = Int(ker[f][e.pivots[i]] * d);
    gens.push_back(std::move(g));
  }
  auto h = hnf_mod(std::move(gens), r, d);
  // Columns of d H^-1: solve H x = d e_i by back substitution (H upper triangular).
  std::vector<std::vector<Int>> dual(r, std::vector<Int>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Rat> x(r, Rat(0));
    for (std::size_t k = r; k-- > 0;) {
      Rat acc = k == i ? Rat(d) : Rat(0);
      for (std::size_t l = k + 1; l < r; ++l)
        if (sgn(x[l]) != 0) acc -= Rat(h[k][l]) * x[l];
      x[k] = acc / Rat(h[k][k]);
    }
    for (std::size_t k = 0; k < r; ++k) {
      if (x[k].get_den() != 1) throw PreconditionError("saturated_kernel: non-integral dual");
      dual[i][k] = x[k].get_num();
    }
  }
  std::vector<std::vector<Int>> basis;
  for (const auto& a : dual) {
    std::vector<Int> v(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
      Rat acc(0);
      for (std::size_t f = 0; f < r; ++f)
        if (sgn(a[f]) != 0 && sgn(ker[f][c]) != 0) acc += Rat(a[f]) * ker[f][c];
      if (acc.get_den() != 1) throw PreconditionError("saturated_kernel: non-integral vector");
      v[c] = acc.get_num();
    }
    basis.push_back(std::move(v));
  }
  return lll_reduce(std::move(basis));
}

}  // namespace sbsplit
