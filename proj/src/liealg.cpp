#include "sbsplit/liealg.hpp"

#include <algorithm>
#include <string>

namespace sbsplit {

namespace {

template <class T>
Matrix<T> lift_matrix(const QMatrix& m, const T& like) {
  Matrix<T> r(m.rows(), m.cols(), ScalarOps<T>::zero(like));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) r(i, j) = ScalarOps<T>::from_rat(like, m(i, j));
  return r;
}

template <class T>
std::vector<T> lift_vector(const QVector& v, const T& like) {
  std::vector<T> r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(ScalarOps<T>::from_rat(like, x));
  return r;
}

QVector combine(const std::vector<QVector>& vs, const QVector& c) {
  QVector r(vs.front().size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (sgn(c[i]) != 0)
      for (std::size_t k = 0; k < r.size(); ++k) r[k] += c[i] * vs[i][k];
  return r;
}

// Rows w with w . h = 0 for every h in the span.
QMatrix annihilator(const std::vector<QVector>& span, std::size_t n) {
  if (span.empty()) return QMatrix::identity(n);
  auto ker = kernel_basis(from_rows(span, n, Rat(0)));
  return from_rows(ker, n, Rat(0));
}

bool in_span(const QMatrix& ann, const QVector& v) { return is_zero_vector(ann * v); }

Int denominator_lcm(const std::vector<Rat>& xs) {
  Int d = 1;
  for (const auto& x : xs) d = lcm(d, x.get_den());
  return d;
}

}  // namespace

LieAlgebra::LieAlgebra(std::size_t dim, std::vector<std::vector<QVector>> sc) : dim_(dim), sc_(std::move(sc)) {
  if (sc_.size() != dim_) throw InvalidInput("structure constant table has wrong size");
  for (const auto& row : sc_) {
    if (row.size() != dim_) throw InvalidInput("structure constant table has wrong size");
    for (const auto& v : row)
      if (v.size() != dim_) throw InvalidInput("structure constant vector has wrong size");
  }
}

LieAlgebra LieAlgebra::from_matrices(const std::vector<QMatrix>& basis) {
  MatrixSpan span(basis);
  const std::size_t n = basis.size();
  std::vector<std::vector<QVector>> sc(n, std::vector<QVector>(n, QVector(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto c = span.coords(commutator(basis[i], basis[j]));
      if (!c) throw PreconditionError("matrix span is not closed under the commutator");
      sc[i][j] = *c;
      for (std::size_t k = 0; k < n; ++k) sc[j][i][k] = -(*c)[k];
    }
  return LieAlgebra(n, std::move(sc));
}

void LieAlgebra::validate() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        if (sc_[i][j][k] != -sc_[j][i][k])
          throw InvalidInput("structure constants are not antisymmetric at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      for (std::size_t k = j + 1; k < dim_; ++k) {
        auto a = bracket(bracket(unit(i), unit(j)), unit(k));
        auto b = bracket(bracket(unit(j), unit(k)), unit(i));
        auto c = bracket(bracket(unit(k), unit(i)), unit(j));
        for (std::size_t l = 0; l < dim_; ++l)
          if (sgn(a[l] + b[l] + c[l]) != 0)
            throw InvalidInput("Jacobi identity fails on basis triple (" + std::to_string(i) + "," +
                               std::to_string(j) + "," + std::to_string(k) + ")");
      }
}

QVector LieAlgebra::unit(std::size_t i) const {
  QVector v(dim_);
  v[i] = 1;
  return v;
}

MatrixSpan::MatrixSpan(std::vector<QMatrix> basis) : basis_(std::move(basis)) {
  if (basis_.empty()) return;
  const std::size_t k = basis_.size();
  const std::size_t entries = basis_[0].rows() * basis_[0].cols();
  QMatrix t(k, entries);
  for (std::size_t i = 0; i < k; ++i) {
    if (basis_[i].rows() * basis_[i].cols() != entries) throw PreconditionError("matrix span: shape mismatch");
    for (std::size_t e = 0; e < entries; ++e) t(i, e) = basis_[i].data()[e];
  }
  auto ech = rref(t);
  if (ech.rank() != k) throw PreconditionError("matrix span: basis is linearly dependent");
  rows_ = ech.pivots;
  QMatrix sub(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t i = 0; i < k; ++i) sub(r, i) = basis_[i].data()[rows_[r]];
  inv_ = *inverse(sub);
}

std::optional<QVector> MatrixSpan::coords(const QMatrix& m) const {
  const std::size_t k = basis_.size();
  if (k == 0) return m.is_zero() ? std::optional<QVector>(QVector{}) : std::nullopt;
  QVector rhs(k);
  for (std::size_t r = 0; r < k; ++r) rhs[r] = m.data()[rows_[r]];
  QVector c = inv_ * rhs;
  if (!(combine(c) == m)) return std::nullopt;
  return c;
}

QMatrix MatrixSpan::combine(const QVector& c) const {
  QMatrix r(basis_[0].rows(), basis_[0].cols());
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (sgn(c[i]) != 0) r += basis_[i] * c[i];
  return r;
}

QMatrix killing_form(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  std::vector<QMatrix> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(g.ad(g.unit(i)));
  QMatrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      // trace(A B) without forming the product
      Rat t;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (sgn(ads[i](a, b)) != 0 && sgn(ads[j](b, a)) != 0) t += ads[i](a, b) * ads[j](b, a);
      k(i, j) = k(j, i) = t;
    }
  return k;
}

KillingChecks killing_and_checks(const LieAlgebra& g) {
  g.validate();
  KillingChecks out;
  out.killing = killing_form(g);
  const std::size_t n = g.dim();
  out.semisimple = n > 0 && rank(out.killing) == n;
  // Centroid: matrices commuting with every ad e_i, as a linear system on n^2 unknowns.
  std::vector<QMatrix> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(g.ad(g.unit(i)));
  QMatrix sys(n * n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        // (C A - A C)(r, c) = sum_k C(r,k) A(k,c) - A(r,k) C(k,c)
        std::size_t row = (i * n + r) * n + c;
        for (std::size_t k = 0; k < n; ++k) {
          sys(row, r * n + k) += ads[i](k, c);
          sys(row, k * n + c) -= ads[i](r, k);
        }
      }
  out.centroid_dim = n * n - rank(sys);
  out.simple8 = out.semisimple && n == 8 && out.centroid_dim == 1;
  return out;
}

bool is_nilpotent_subalgebra(const LieAlgebra& g, const std::vector<QVector>& basis) {
  const std::size_t n = g.dim();
  QMatrix ann = annihilator(basis, n);
  for (const auto& x : basis)
    for (const auto& y : basis)
      if (!in_span(ann, g.bracket(x, y))) return false;
  // Lower central series: C_{k+1} = [H, C_k].
  std::vector<QVector> cur = basis;
  for (std::size_t step = 0; step <= basis.size(); ++step) {
    std::vector<QVector> next;
    for (const auto& x : basis)
      for (const auto& y : cur) next.push_back(g.bracket(x, y));
    if (next.empty()) return true;
    next = row_space(from_rows(next, n, Rat(0)));
    if (next.empty()) return true;
    if (next.size() >= cur.size()) return false;
    cur = std::move(next);
  }
  return false;
}

bool is_self_normalizing(const LieAlgebra& g, const std::vector<QVector>& basis) {
  const std::size_t n = g.dim();
  QMatrix ann = annihilator(basis, n);
  // y normalizes H iff ann . [h, y] = 0 for each basis h.
  std::vector<QVector> rows;
  for (const auto& h : basis) {
    QMatrix cond = ann * g.ad(h);
    for (std::size_t r = 0; r < cond.rows(); ++r) {
      auto row = cond.row(r);
      rows.emplace_back(row.begin(), row.end());
    }
  }
  if (rows.empty()) return basis.size() == n;
  return n - rank(from_rows(rows, n, Rat(0))) == basis.size();
}

CartanData cartan_subalgebra(const LieAlgebra& g, Rng& rng) {
  const std::size_t n = g.dim();
  if (n == 0) throw PreconditionError("Cartan subalgebra of the zero algebra");
  std::optional<CartanData> best;
  // Returns true when the search can stop: x gives a split Cartan subalgebra.
  auto attempt = [&](const QVector& x) -> bool {
    QMatrix ad = g.ad(x);
    QMatrix p = ad;
    for (std::size_t k = 1; k < n; ++k) p = p * ad;
    auto h = kernel_basis(p);
    if (h.empty() || h.size() == n) return false;
    UniPoly cp = char_poly(ad);
    std::vector<Rat> tail(cp.coeffs().begin() + static_cast<long>(h.size()), cp.coeffs().end());
    UniPoly roots(tail, Rat(0));
    int degree = 0;
    for (const auto& fe : factor_over_q(roots)) degree = std::max(degree, fe.first.degree());
    if (best && degree >= best->root_degree) return false;
    if (!is_nilpotent_subalgebra(g, h) || !is_self_normalizing(g, h)) return false;
    // x itself lies in H; keep it as the first basis vector, completed from the rref basis.
    CartanData out;
    out.basis = {x};
    for (const auto& v : row_space(from_rows(h, n, Rat(0)))) {
      std::vector<QVector> trial = out.basis;
      trial.push_back(v);
      if (out.basis.size() < h.size() && rank(from_rows(trial, n, Rat(0))) == trial.size()) out.basis = trial;
    }
    out.root_degree = degree;
    out.split = degree == 1 && is_split_cartan(g, out.basis, rng);
    best = out;
    return out.split;
  };
  // Sparse candidates first: basis vectors, then e_i + e_j and e_i - e_j. Among them the
  // Cartan subalgebra with the smallest root degree wins; random vectors are a fallback.
  for (std::size_t i = 0; i < n; ++i)
    if (attempt(g.unit(i))) return *best;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (int s : {1, -1}) {
        QVector x = g.unit(i);
        x[j] = s;
        if (attempt(x)) return *best;
      }
  for (long bound = 2; bound <= 64 && !best; bound *= 2)
    for (int k = 0; k < 8; ++k) {
      QVector x(n);
      for (auto& c : x) c = rng.uniform(-bound, bound);
      if (is_zero_vector(x)) continue;
      if (attempt(x)) return *best;
    }
  if (!best) throw PreconditionError("no regular element found for a Cartan subalgebra");
  return *best;
}

std::vector<QMatrix> reduce_matrix_basis(const std::vector<QMatrix>& basis, QMatrix* transform) {
  const std::size_t n = basis.size();
  // Each matrix is first scaled to a primitive integral one; scale[k] records the factor.
  std::vector<Rat> scale;
  std::vector<std::vector<Int>> rows;
  for (const auto& m : basis) {
    Int d = denominator_lcm(m.data());
    Int c = 0;
    for (const auto& x : m.data()) c = gcd(c, Int(x * d));
    if (c == 0) throw PreconditionError("reduce_matrix_basis: zero matrix");
    scale.push_back(Rat(d) / c);
    std::vector<Int> r;
    for (const auto& x : m.data()) r.push_back(Int(x * scale.back()));
    rows.push_back(std::move(r));
  }
  std::vector<std::vector<Int>> u;
  auto red = lll_reduce(rows, &u);
  std::vector<QMatrix> out;
  if (transform) *transform = QMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Int c = 0;
    for (const auto& x : red[i]) c = gcd(c, x);
    QMatrix m(basis[i].rows(), basis[i].cols());
    for (std::size_t k = 0; k < red[i].size(); ++k) m.data()[k] = Rat(red[i][k]) / c;
    out.push_back(std::move(m));
    if (transform)
      for (std::size_t k = 0; k < n; ++k) (*transform)(k, i) = Rat(u[i][k]) * scale[k] / c;
  }
  return out;
}

bool is_split_cartan(const LieAlgebra& g, const std::vector<QVector>& cartan, Rng& rng) {
  const std::size_t n = g.dim();
  std::vector<QVector> tests = cartan;
  for (int i = 0; i < 3; ++i) {
    QVector c(cartan.size());
    for (auto& v : c) v = rng.uniform(-5, 5);
    tests.push_back(combine(cartan, c));
  }
  for (const auto& h : tests) {
    UniPoly cp = char_poly(g.ad(h));
    if (rational_roots(cp).size() != n) return false;
  }
  return true;
}

GenericCartanElement generic_cartan_element(const LieAlgebra& g, const std::vector<QVector>& cartan) {
  if (cartan.size() != 2) throw PreconditionError("expected a two-dimensional Cartan subalgebra");
  for (long height = 1; height <= 20; ++height)
    for (long a = -height; a <= height; ++a)
      for (long b = -height; b <= height; ++b) {
        if (std::max(std::labs(a), std::labs(b)) != height) continue;
        QVector h = combine(cartan, QVector{Rat(a), Rat(b)});
        UniPoly cp = char_poly(g.ad(h));
        if (sgn(cp.coeff(0)) != 0 || sgn(cp.coeff(1)) != 0 || sgn(cp.coeff(2)) == 0) continue;
        Int d = denominator_lcm(cp.coeffs());
        if (d != 1) {
          for (auto& c : h) c *= d;
          cp = char_poly(g.ad(h));
        }
        UniPoly r = cp / make_poly({0, 0, 1});
        if (poly_gcd(r, r.derivative()).degree() != 0) continue;
        return {h, r};
      }
  throw PreconditionError("no generic Cartan element found");
}

const std::vector<QMatrix>& sl3_basis() {
  static const std::vector<QMatrix> basis = [] {
    auto e = [](std::size_t i, std::size_t j) {
      QMatrix m(3, 3);
      m(i, j) = 1;
      return m;
    };
    return std::vector<QMatrix>{e(0, 1), e(1, 2), e(0, 2), e(1, 0), e(2, 1), e(2, 0),
                                e(0, 0) - e(1, 1), e(1, 1) - e(2, 2)};
  }();
  return basis;
}

const LieAlgebra& sl3_algebra() {
  static const LieAlgebra g = LieAlgebra::from_matrices(sl3_basis());
  return g;
}

QMatrix tau_matrix() {
  QMatrix t(8, 8);
  t(1, 0) = 1;
  t(0, 1) = 1;
  t(2, 2) = -1;
  t(4, 3) = 1;
  t(3, 4) = 1;
  t(5, 5) = -1;
  t(7, 6) = 1;
  t(6, 7) = 1;
  return t;
}

namespace {

// Root-space construction shared by the rational and number-field versions.
template <class T>
std::vector<Matrix<T>> chevalley_iso(const LieAlgebra& g, const std::vector<QVector>& cartan, const QVector& h,
                                     const std::vector<T>& roots, const T& like) {
  const std::size_t n = g.dim();
  if (n != 8 || roots.size() != 6) throw PreconditionError("split_iso_sl3: not an sl3 form");
  const T zero = ScalarOps<T>::zero(like);
  Matrix<T> adh = lift_matrix(g.ad(h), like);
  std::vector<Matrix<T>> adc;
  for (const auto& c : cartan) adc.push_back(lift_matrix(g.ad(c), like));

  struct Root {
    std::vector<T> vec;
    std::array<T, 2> fn;
  };
  std::vector<Root> rs;
  for (const auto& r : roots) {
    Matrix<T> m = adh;
    for (std::size_t i = 0; i < n; ++i) m(i, i) -= r;
    auto ker = kernel_basis(m);
    if (ker.size() != 1) throw PreconditionError("split_iso_sl3: root space is not one-dimensional");
    Root root{ker[0], {zero, zero}};
    std::size_t j = 0;
    while (ScalarOps<T>::is_zero(root.vec[j])) ++j;
    T inv = ScalarOps<T>::inv(root.vec[j]);
    for (int k = 0; k < 2; ++k) root.fn[k] = (adc[k] * root.vec)[j] * inv;
    rs.push_back(std::move(root));
  }
  auto find = [&](const T& f0, const T& f1) -> int {
    for (std::size_t i = 0; i < rs.size(); ++i)
      if (ScalarOps<T>::is_zero(rs[i].fn[0] - f0) && ScalarOps<T>::is_zero(rs[i].fn[1] - f1)) return static_cast<int>(i);
    return -1;
  };
  auto br = [&](const std::vector<T>& x, const std::vector<T>& y) { return g.bracket(x, y); };

  const int a = 0;
  int b = -1;
  for (std::size_t i = 1; i < rs.size() && b < 0; ++i)
    if (find(rs[a].fn[0] + rs[i].fn[0], rs[a].fn[1] + rs[i].fn[1]) >= 0) b = static_cast<int>(i);
  if (b < 0) throw PreconditionError("split_iso_sl3: no pair of simple roots");
  int na = find(-rs[a].fn[0], -rs[a].fn[1]);
  int nb = find(-rs[b].fn[0], -rs[b].fn[1]);
  if (na < 0 || nb < 0) throw PreconditionError("split_iso_sl3: roots are not symmetric");

  // Scale f so that [[e, f], e] = 2 e.
  auto normalize = [&](const std::vector<T>& e, std::vector<T> f) {
    auto c = br(br(e, f), e);
    std::size_t j = 0;
    while (ScalarOps<T>::is_zero(e[j])) ++j;
    T s = e[j] * ScalarOps<T>::from_rat(like, Rat(2)) * ScalarOps<T>::inv(c[j]);
    for (auto& x : f) x *= s;
    return f;
  };
  std::vector<T> e1 = rs[a].vec, e2 = rs[b].vec;
  std::vector<T> f1 = normalize(e1, rs[na].vec), f2 = normalize(e2, rs[nb].vec);
  std::vector<std::vector<T>> cols{e1, e2, br(e1, e2), f1, f2, br(f2, f1), br(e1, f1), br(e2, f2)};
  auto pinv = inverse(from_columns(cols, n, zero));
  if (!pinv) throw PreconditionError("split_iso_sl3: Chevalley vectors are dependent");

  std::vector<Matrix<T>> std_basis;
  for (const auto& m : sl3_basis()) std_basis.push_back(lift_matrix(m, like));
  std::vector<Matrix<T>> images;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<T> img(3, 3, zero);
    for (std::size_t k = 0; k < n; ++k)
      if (!ScalarOps<T>::is_zero((*pinv)(k, i))) img += std_basis[k] * (*pinv)(k, i);
    images.push_back(std::move(img));
  }
  if (!is_lie_hom(g, images)) throw PreconditionError("split_iso_sl3: constructed map is not a homomorphism");
  return images;
}

}  // namespace

SplitIso split_iso_sl3(const LieAlgebra& g, const std::vector<QVector>& cartan, const FieldPtr& f) {
  auto gen = generic_cartan_element(g, cartan);
  auto roots = nf_roots(gen.root_poly, f);
  if (roots.size() != 6) throw PreconditionError("split_iso_sl3: field does not split the Cartan subalgebra");
  std::sort(roots.begin(), roots.end(), [](const NfElem& x, const NfElem& y) {
    return std::lexicographical_compare(x.coords().begin(), x.coords().end(), y.coords().begin(), y.coords().end());
  });
  return {f, chevalley_iso(g, cartan, gen.h, roots, f->zero())};
}

std::vector<QMatrix> split_iso_sl3_q(const LieAlgebra& g, const std::vector<QVector>& cartan) {
  auto gen = generic_cartan_element(g, cartan);
  auto roots = rational_roots(gen.root_poly);
  if (roots.size() != 6) throw PreconditionError("split_iso_sl3_q: Cartan subalgebra is not split");
  return chevalley_iso(g, cartan, gen.h, roots, Rat(0));
}

QMatrix sym3_matrix(const QMatrix& x) {
  // Monomials as exponent triples in (s, t, u).
  static const std::array<std::array<int, 3>, 10> mono = {{{3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {2, 1, 0}, {0, 2, 1},
                                                           {1, 0, 2}, {1, 2, 0}, {0, 1, 2}, {2, 0, 1}, {1, 1, 1}}};
  auto index = [&](const std::array<int, 3>& e) {
    for (std::size_t i = 0; i < mono.size(); ++i)
      if (mono[i] == e) return i;
    throw PreconditionError("sym3: bad monomial");
  };
  QMatrix r(10, 10);
  for (std::size_t row = 0; row < 10; ++row) {
    const std::array<int, 3>& e = mono[row];
    // D(v_i) = sum_j x(i, j) v_j; D(m) = sum_i e_i m / v_i * D(v_i).
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      for (int j = 0; j < 3; ++j) {
        if (sgn(x(i, j)) == 0) continue;
        std::array<int, 3> t = e;
        --t[i];
        ++t[j];
        std::size_t col = index(t);
        r(row, col) += x(i, j) * e[i];
      }
    }
  }
  return r;
}

Sl3Rep sym3_rep() {
  Sl3Rep rep;
  for (const auto& m : sl3_basis()) rep.push_back(sym3_matrix(m));
  return rep;
}

Sl3Rep compose_tau(const Sl3Rep& rep) {
  QMatrix t = tau_matrix();
  Sl3Rep out;
  for (std::size_t i = 0; i < 8; ++i) {
    QMatrix m(rep[0].rows(), rep[0].cols());
    for (std::size_t k = 0; k < 8; ++k)
      if (sgn(t(k, i)) != 0) m += rep[k] * t(k, i);
    out.push_back(std::move(m));
  }
  return out;
}

bool is_sl3_rep(const Sl3Rep& rep) { return rep.size() == 8 && is_lie_hom(sl3_algebra(), rep); }

namespace {

std::optional<QVector> highest_weight_line(const Sl3Rep& rep) {
  if (rep.size() != 8) throw PreconditionError("highest_weight: expected images of 8 generators");
  const std::size_t d = rep[0].rows();
  if (d != 10) throw PreconditionError("highest_weight: module is not 10-dimensional");
  QMatrix stacked(3 * d, d);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) stacked(k * d + i, j) = rep[k](i, j);
  auto ker = kernel_basis(stacked);
  if (ker.size() != 1) return std::nullopt;
  return ker[0];
}

}  // namespace

QVector highest_weight_vector(const Sl3Rep& rep) {
  auto v = highest_weight_line(rep);
  if (!v) throw PreconditionError("highest_weight: no unique highest-weight line");
  std::size_t j = 0;
  while (sgn((*v)[j]) == 0) ++j;
  Rat s = 1 / (*v)[j];
  for (auto& x : *v) x *= s;
  return *v;
}

std::array<Rat, 2> highest_weight(const Sl3Rep& rep) {
  QVector v = highest_weight_vector(rep);
  std::size_t j = 0;
  while (sgn(v[j]) == 0) ++j;
  std::array<Rat, 2> w;
  for (int k = 0; k < 2; ++k) {
    QVector hv = rep[6 + k] * v;
    w[k] = hv[j] / v[j];
    for (std::size_t i = 0; i < v.size(); ++i)
      if (hv[i] != w[k] * v[i]) throw PreconditionError("highest_weight: vector is not a weight vector");
  }
  return w;
}

QMatrix module_isomorphism(const Sl3Rep& rep0, const Sl3Rep& rep) {
  if (highest_weight(rep0) != highest_weight(rep))
    throw PreconditionError("module_isomorphism: highest weights differ");
  const std::size_t d = rep0[0].rows();
  QVector v0 = highest_weight_vector(rep0), w0 = highest_weight_vector(rep);
  // Length-then-lex words in f1, f2; extensions only of kept words.
  std::vector<QVector> vs{v0}, ws{w0};
  std::vector<std::size_t> frontier{0};
  while (vs.size() < d && !frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier)
      for (std::size_t gen : {3u, 4u}) {
        QVector v = rep0[gen] * vs[idx];
        std::vector<QVector> trial = vs;
        trial.push_back(v);
        if (rank(from_columns(trial, d, Rat(0))) != trial.size()) continue;
        vs.push_back(std::move(v));
        ws.push_back(rep[gen] * ws[idx]);
        next.push_back(vs.size() - 1);
      }
    frontier = std::move(next);
  }
  if (vs.size() != d) throw PreconditionError("module_isomorphism: module is not cyclic on its highest weight");
  auto vinv = inverse(from_columns(vs, d, Rat(0)));
  QMatrix f = from_columns(ws, d, Rat(0)) * *vinv;
  for (std::size_t k = 0; k < 8; ++k)
    if (!(f * rep0[k] == rep[k] * f)) throw PreconditionError("module_isomorphism: map does not intertwine");
  if (!inverse(f)) throw PreconditionError("module_isomorphism: map is singular");
  return f;
}

}  // namespace sbsplit
