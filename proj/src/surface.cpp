#include "sbsplit/surface.hpp"

#include <cstdint>
#include <map>

namespace sbsplit {

namespace {

constexpr std::size_t kN = 10;
constexpr std::size_t kQuadrics = 27;
constexpr std::size_t kSym = kN * (kN + 1) / 2;
constexpr std::uint64_t kPrime = 2147483647;

// Degree-6 monomials in s, t, u, in the order they are first produced by x_a x_b.
std::map<std::array<int, 3>, std::size_t> sextic_index() {
  std::map<std::array<int, 3>, std::size_t> idx;
  const auto& mon = s0_monomials();
  for (std::size_t a = 0; a < kN; ++a)
    for (std::size_t b = a; b < kN; ++b) {
      std::array<int, 3> e{mon[a][0] + mon[b][0], mon[a][1] + mon[b][1], mon[a][2] + mon[b][2]};
      idx.emplace(e, idx.size());
    }
  return idx;
}

QMatrix primitive_integral(QMatrix m) {
  Int l = 1;
  for (const auto& x : m.data()) l = lcm(l, Int(x.get_den()));
  Int g = 0;
  for (auto& x : m.data()) {
    x *= l;
    g = gcd(g, Int(x.get_num()));
  }
  if (g != 0 && g != 1)
    for (auto& x : m.data()) x /= g;
  return m;
}

QVector primitive_integer_vector(QVector v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, Int(x.get_den()));
  Int g = 0;
  for (auto& x : v) {
    x *= l;
    g = gcd(g, Int(x.get_num()));
  }
  if (g != 0 && g != 1)
    for (auto& x : v) x /= g;
  return v;
}

// Rows of m that stay independent modulo a word-sized prime; they are independent over Q.
std::vector<std::size_t> independent_rows_modp(const QMatrix& m) {
  const std::size_t n = m.cols();
  std::vector<std::vector<std::uint64_t>> basis;
  std::vector<std::size_t> pivots, chosen;
  auto inv_mod = [](std::uint64_t a) {
    std::uint64_t r = 1, e = kPrime - 2;
    while (e) {
      if (e & 1) r = r * a % kPrime;
      a = a * a % kPrime;
      e >>= 1;
    }
    return r;
  };
  for (std::size_t i = 0; i < m.rows() && chosen.size() < n; ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < n; ++j) l = lcm(l, Int(m(i, j).get_den()));
    std::vector<std::uint64_t> v(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(m(i, j)) == 0) continue;
      Int z = m(i, j).get_num() * (l / m(i, j).get_den());
      v[j] = mpz_fdiv_ui(z.get_mpz_t(), kPrime);
    }
    for (std::size_t k = 0; k < basis.size(); ++k) {
      std::uint64_t f = v[pivots[k]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (basis[k][j]) v[j] = (v[j] + (kPrime - f) * basis[k][j]) % kPrime;
    }
    std::size_t p = 0;
    while (p < n && v[p] == 0) ++p;
    if (p == n) continue;
    std::uint64_t inv = inv_mod(v[p]);
    for (auto& x : v) x = x * inv % kPrime;
    basis.push_back(std::move(v));
    pivots.push_back(p);
    chosen.push_back(i);
  }
  return chosen;
}

// Kernel of m: solve the subsystem of rows independent mod p exactly and keep it if every
// kernel vector satisfies all rows; otherwise fall back to the full system.
std::vector<QVector> multimodular_kernel(const QMatrix& m) {
  auto rows = independent_rows_modp(m);
  QMatrix sub(rows.size(), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t j = 0; j < m.cols(); ++j) sub(r, j) = m(rows[r], j);
  auto ker = kernel_basis(detail::bareiss_rref(sub));
  for (const auto& v : ker)
    if (!is_zero_vector(m * v)) return kernel_basis(m);
  return ker;
}

// Matrix of X -> upper triangle of X^T A + A X, acting on the row-major entries of X.
QMatrix sym_action(const QMatrix& a) {
  QMatrix out(kSym, kN * kN);
  std::size_t row = 0;
  for (std::size_t p = 0; p < kN; ++p)
    for (std::size_t q = p; q < kN; ++q, ++row)
      for (std::size_t r = 0; r < kN; ++r) {
        // (X^T A)(p, q) = sum_r X(r, p) A(r, q); (A X)(p, q) = sum_r A(p, r) X(r, q).
        if (sgn(a(r, q)) != 0) out(row, r * kN + p) += a(r, q);
        if (sgn(a(p, r)) != 0) out(row, r * kN + q) += a(p, r);
      }
  return out;
}

}  // namespace

void validate_surface(const SurfaceQuadrics& s) {
  if (s.quadrics.size() != kQuadrics)
    throw InvalidInput("expected 27 quadrics, got " + std::to_string(s.quadrics.size()));
  for (std::size_t i = 0; i < s.quadrics.size(); ++i) {
    const QMatrix& a = s.quadrics[i];
    if (a.rows() != kN || a.cols() != kN) throw InvalidInput("quadric " + std::to_string(i) + " is not 10x10");
    if (!(a == a.transpose())) throw InvalidInput("quadric " + std::to_string(i) + " is not symmetric");
  }
  std::vector<QVector> rows;
  for (const auto& a : s.quadrics) rows.push_back(sym_coords(a));
  if (rank(from_rows(rows, kSym, Rat(0))) != kQuadrics) throw InvalidInput("quadrics are linearly dependent");
}

const std::array<std::array<int, 3>, 10>& s0_monomials() {
  static const std::array<std::array<int, 3>, 10> mon{{{3, 0, 0},
                                                       {0, 3, 0},
                                                       {0, 0, 3},
                                                       {2, 1, 0},
                                                       {0, 2, 1},
                                                       {1, 0, 2},
                                                       {1, 2, 0},
                                                       {0, 1, 2},
                                                       {2, 0, 1},
                                                       {1, 1, 1}}};
  return mon;
}

QVector s0_point(const Rat& s, const Rat& t, const Rat& u) {
  if (sgn(s) == 0 && sgn(t) == 0 && sgn(u) == 0) throw PreconditionError("s0_point: zero triple");
  QVector p;
  for (const auto& e : s0_monomials()) {
    Rat v = 1;
    for (int k = 0; k < e[0]; ++k) v *= s;
    for (int k = 0; k < e[1]; ++k) v *= t;
    for (int k = 0; k < e[2]; ++k) v *= u;
    p.push_back(v);
  }
  return p;
}

QMatrix s0_evaluation_map() {
  auto idx = sextic_index();
  const auto& mon = s0_monomials();
  QMatrix m(kSym, idx.size());
  std::size_t row = 0;
  for (std::size_t a = 0; a < kN; ++a)
    for (std::size_t b = a; b < kN; ++b, ++row) {
      std::array<int, 3> e{mon[a][0] + mon[b][0], mon[a][1] + mon[b][1], mon[a][2] + mon[b][2]};
      m(row, idx.at(e)) = 1;
    }
  return m;
}

QVector sym_coords(const QMatrix& a) {
  QVector c;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) c.push_back(a(i, j));
  return c;
}

QMatrix from_sym_coords(const QVector& c, std::size_t n) {
  QMatrix a(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j, ++k) {
      a(i, j) = c[k];
      a(j, i) = c[k];
    }
  return a;
}

SurfaceQuadrics s0_quadrics() {
  // A kernel vector c gives the form sum_{a<=b} c_ab x_a x_b, i.e. A(a,a) = c_aa and
  // A(a,b) = A(b,a) = c_ab / 2.
  auto ker = kernel_basis(s0_evaluation_map().transpose());
  SurfaceQuadrics s;
  for (const auto& c : ker) {
    QMatrix a(kN, kN);
    std::size_t k = 0;
    for (std::size_t i = 0; i < kN; ++i)
      for (std::size_t j = i; j < kN; ++j, ++k) {
        if (i == j) {
          a(i, i) = c[k];
        } else {
          a(i, j) = c[k] / 2;
          a(j, i) = c[k] / 2;
        }
      }
    s.quadrics.push_back(primitive_integral(a));
  }
  return s;
}

bool vanishes_on_s0(const QMatrix& a) {
  const auto& mon = s0_monomials();
  std::map<std::array<int, 3>, Rat> form;
  for (std::size_t i = 0; i < kN; ++i)
    for (std::size_t j = 0; j < kN; ++j) {
      if (sgn(a(i, j)) == 0) continue;
      form[{mon[i][0] + mon[j][0], mon[i][1] + mon[j][1], mon[i][2] + mon[j][2]}] += a(i, j);
    }
  for (const auto& [e, c] : form)
    if (sgn(c) != 0) return false;
  return true;
}

QMatrix random_twist_matrix(Rng& rng, long bound) {
  if (bound < 1) throw InvalidInput("random_twist_matrix: bound must be at least 1");
  while (true) {
    QMatrix m(kN, kN);
    for (auto& x : m.data()) x = rng.uniform(-bound, bound);
    if (inverse(m)) return m;
  }
}

SurfaceQuadrics twist_surface(const QMatrix& m) {
  if (m.rows() != kN || m.cols() != kN) throw PreconditionError("twist_surface: M must be 10x10");
  auto minv = inverse(m);
  if (!minv) throw PreconditionError("twist_surface: M is singular");
  QMatrix mt = minv->transpose();
  std::vector<QVector> rows;
  for (const auto& a : s0_quadrics().quadrics) rows.push_back(sym_coords(mt * a * *minv));
  SurfaceQuadrics s;
  for (const auto& r : row_space(from_rows(rows, kSym, Rat(0))))
    s.quadrics.push_back(primitive_integral(from_sym_coords(r, kN)));
  return s;
}

LieOfSurface lie_of_surface(const SurfaceQuadrics& s) {
  std::vector<QVector> cols;
  for (const auto& a : s.quadrics) cols.push_back(sym_coords(a));
  // Rows of `proj` annihilate span{A_j}, so the condition on X is proj * sym(X^T A_i + A_i X) = 0.
  // A reduced integral basis and integral quadrics keep the stacked system small.
  auto proj = saturated_kernel(from_rows(cols, kSym, Rat(0)));
  QMatrix sys(s.quadrics.size() * proj.size(), kN * kN);
  for (std::size_t b = 0; b < s.quadrics.size(); ++b) {
    QMatrix act = sym_action(primitive_integral(s.quadrics[b]));
    std::vector<std::vector<std::pair<std::size_t, Int>>> nz(kSym);
    for (std::size_t r = 0; r < kSym; ++r)
      for (std::size_t j = 0; j < kN * kN; ++j)
        if (sgn(act(r, j)) != 0) nz[r].emplace_back(j, act(r, j).get_num());
    for (std::size_t i = 0; i < proj.size(); ++i) {
      std::vector<Int> row(kN * kN, 0);
      for (std::size_t r = 0; r < kSym; ++r) {
        if (sgn(proj[i][r]) == 0) continue;
        for (const auto& [j, v] : nz[r]) row[j] += proj[i][r] * v;
      }
      for (std::size_t j = 0; j < kN * kN; ++j) sys(b * proj.size() + i, j) = row[j];
    }
  }

  LieOfSurface out;
  for (const auto& v : multimodular_kernel(sys)) out.basis.push_back(unvec(v, kN, kN));
  out.algebra = LieAlgebra::from_matrices(out.basis);
  MatrixSpan quad(s.quadrics);
  for (const auto& x : out.basis) {
    QMatrix w(s.quadrics.size(), s.quadrics.size());
    for (std::size_t i = 0; i < s.quadrics.size(); ++i) {
      const QMatrix& a = s.quadrics[i];
      auto lam = quad.coords(x.transpose() * a + a * x);
      if (!lam) throw PreconditionError("lie_of_surface: kernel vector fails the defining condition");
      for (std::size_t j = 0; j < lam->size(); ++j) w(i, j) = (*lam)[j];
    }
    out.witnesses.push_back(std::move(w));
  }
  return out;
}

std::optional<std::vector<QMatrix>> traceless_part(const LieOfSurface& l) {
  if (l.basis.size() != 9) return std::nullopt;
  MatrixSpan span(l.basis);
  if (!span.coords(QMatrix::identity(kN))) return std::nullopt;
  std::vector<QVector> rows;
  for (const auto& x : l.basis) {
    Rat tr = 0;
    for (std::size_t i = 0; i < kN; ++i) tr += x(i, i);
    rows.push_back(vec(x - QMatrix::identity(kN) * (tr / Rat(kN))));
  }
  std::vector<QMatrix> out;
  for (const auto& r : row_space(from_rows(rows, kN * kN, Rat(0)))) out.push_back(unvec(r, kN, kN));
  if (out.size() != 8) return std::nullopt;
  return out;
}

bool is_irreducible_module(const std::vector<QMatrix>& mats) {
  if (mats.empty()) return false;
  const std::size_t n = mats[0].rows();
  return assoc_closure(mats).alg.dim() == n * n;
}

bool same_span(const std::vector<QMatrix>& a, const std::vector<QMatrix>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  std::vector<QVector> ra, rb;
  for (const auto& m : a) ra.push_back(vec(m));
  for (const auto& m : b) rb.push_back(vec(m));
  const std::size_t n = ra[0].size();
  return row_space(from_rows(ra, n, Rat(0))) == row_space(from_rows(rb, n, Rat(0)));
}

QMatrix normalize_projective(QMatrix m) {
  for (const auto& x : m.data())
    if (sgn(x) != 0) {
      Rat inv = 1 / x;
      for (auto& y : m.data()) y *= inv;
      return m;
    }
  throw PreconditionError("normalize_projective: zero matrix");
}

bool verify_parametrization(const SurfaceQuadrics& s, const QMatrix& m) {
  if (m.rows() != kN || m.cols() != kN || s.quadrics.size() != kQuadrics) return false;
  auto minv = inverse(m);
  if (!minv) return false;
  QMatrix mt = minv->transpose();
  MatrixSpan span(s.quadrics);
  for (const auto& a : s0_quadrics().quadrics)
    if (!span.coords(mt * a * *minv)) return false;
  Rng rng(0x5eedULL);
  for (int k = 0; k < 50; ++k) {
    Rat a(rng.uniform(-5, 5)), b(rng.uniform(-5, 5)), c(rng.uniform(1, 5));
    QVector p = m * s0_point(a, b, c);
    for (const auto& q : s.quadrics) {
      QVector qp = q * p;
      Rat v = 0;
      for (std::size_t i = 0; i < kN; ++i) v += p[i] * qp[i];
      if (sgn(v) != 0) return false;
    }
  }
  return true;
}

std::vector<QVector> small_points(const SurfaceQuadrics& s) {
  // x^T A x = <A', x x^T> with off-diagonal entries of A doubled.
  QMatrix c(s.quadrics.size(), kSym);
  for (std::size_t q = 0; q < s.quadrics.size(); ++q) {
    std::size_t k = 0;
    for (std::size_t a = 0; a < kN; ++a)
      for (std::size_t b = a; b < kN; ++b, ++k) c(q, k) = a == b ? s.quadrics[q](a, a) : s.quadrics[q](a, b) * 2;
  }
  const auto lat = saturated_kernel(c);
  // Basis vectors first, then +-b_i +- b_j, then three-term combinations of the first dozen.
  std::vector<std::vector<Int>> cands = lat;
  auto add = [&](std::vector<Int> v, const std::vector<Int>& w, int sign) {
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += sign * w[k];
    return v;
  };
  for (std::size_t i = 0; i < lat.size(); ++i)
    for (std::size_t j = i + 1; j < lat.size(); ++j)
      for (int sj : {1, -1}) cands.push_back(add(lat[i], lat[j], sj));
  const std::size_t m = std::min<std::size_t>(lat.size(), 12);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        for (int sj : {1, -1})
          for (int sk : {1, -1}) cands.push_back(add(add(lat[i], lat[j], sj), lat[k], sk));

  std::vector<QVector> pts;
  for (const auto& v : cands) {
    // Symmetric matrix from upper-triangle coordinates, tested for rank one in integers.
    std::array<std::array<const Int*, kN>, kN> p{};
    std::size_t k = 0;
    for (std::size_t a = 0; a < kN; ++a)
      for (std::size_t b = a; b < kN; ++b, ++k) p[a][b] = p[b][a] = &v[k];
    std::size_t j = 0;
    while (j < kN && sgn(*p[j][j]) == 0) ++j;
    if (j == kN) continue;
    bool rank_one = true;
    for (std::size_t a = 0; a < kN && rank_one; ++a)
      for (std::size_t b = a; b < kN && rank_one; ++b) rank_one = *p[a][b] * *p[j][j] == *p[a][j] * *p[b][j];
    if (!rank_one) continue;
    QVector x(kN);
    for (std::size_t a = 0; a < kN; ++a) x[a] = *p[a][j];
    x = primitive_integer_vector(x);
    bool on = true;
    for (const auto& a : s.quadrics) {
      QVector ax = a * x;
      Rat q(0);
      for (std::size_t i = 0; i < kN; ++i) q += x[i] * ax[i];
      on = on && sgn(q) == 0;
    }
    if (!on) continue;
    bool seen = false;
    for (const auto& y : pts) seen = seen || rank(from_columns(std::vector<QVector>{x, y}, kN, Rat(0))) == 1;
    if (!seen) pts.push_back(std::move(x));
  }
  return pts;
}

std::optional<std::vector<QVector>> cartan_from_points(const LieAlgebra& g, const std::vector<QMatrix>& basis,
                                                       const std::vector<QVector>& points, Rng& rng) {
  const std::size_t n = basis.size();
  // Rows (X p)_i p_j - (X p)_j p_i = 0 for the first nonzero p_j.
  auto conditions = [&](const QVector& p) {
    std::size_t j = 0;
    while (sgn(p[j]) == 0) ++j;
    QMatrix rows(kN, n);
    for (std::size_t k = 0; k < n; ++k) {
      QVector xp = basis[k] * p;
      for (std::size_t i = 0; i < kN; ++i) rows(i, k) = xp[i] * p[j] - xp[j] * p[i];
    }
    return rows;
  };
  std::vector<QMatrix> conds;
  for (const auto& p : points) conds.push_back(conditions(p));
  // Two points fix two lines of the natural module; elements stabilizing both are
  // triangular there, with rational eigenvalues, so a regular one has a split centralizer.
  const std::size_t m = std::min<std::size_t>(points.size(), 8);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      QMatrix sys(2 * kN, n);
      for (std::size_t i = 0; i < kN; ++i)
        for (std::size_t k = 0; k < n; ++k) {
          sys(i, k) = conds[a](i, k);
          sys(kN + i, k) = conds[b](i, k);
        }
      auto stab = kernel_basis(rref(sys));
      std::vector<QVector> cands = stab;
      for (std::size_t i = 0; i < stab.size(); ++i)
        for (std::size_t j = i + 1; j < stab.size(); ++j) {
          QVector v = stab[i];
          for (std::size_t k = 0; k < n; ++k) v[k] += stab[j][k];
          cands.push_back(std::move(v));
        }
      for (const auto& x : cands) {
        auto h = kernel_basis(rref(g.ad(x)));
        if (h.size() != 2) continue;
        if (!is_nilpotent_subalgebra(g, h) || !is_self_normalizing(g, h)) continue;
        if (is_split_cartan(g, h, rng)) return h;
      }
    }
  return std::nullopt;
}

std::string to_string(PipelineVerdict::Status s) {
  switch (s) {
    case PipelineVerdict::Status::Split:
      return "split";
    case PipelineVerdict::Status::NonSplit:
      return "non-split";
    case PipelineVerdict::Status::Invalid:
      return "invalid";
    case PipelineVerdict::Status::Unknown:
      return "unknown";
  }
  return "unknown";
}

PipelineVerdict decide_and_parametrize(const SurfaceQuadrics& s, Rng& rng, const PipelineOptions& opt) {
  PipelineVerdict out;
  out.stage = "validate";
  try {
    validate_surface(s);
  } catch (const InvalidInput& e) {
    out.status = PipelineVerdict::Status::Invalid;
    out.reason = e.what();
    return out;
  }

  out.stage = "lie-algebra";
  LieOfSurface l = lie_of_surface(s);
  out.lie_dim = l.basis.size();
  auto tl = traceless_part(l);
  if (!tl) {
    out.status = PipelineVerdict::Status::NonSplit;
    out.reason = "lie-dim";
    return out;
  }
  const std::vector<QMatrix>& basis = *tl;
  LieAlgebra g = LieAlgebra::from_matrices(basis);
  if (!killing_and_checks(g).semisimple) {
    out.status = PipelineVerdict::Status::Invalid;
    out.reason = "traceless part is not semisimple";
    return out;
  }

  // Points of small height give a split Cartan directly; otherwise decide g = sl3(Q)
  // from the Lie algebra alone.
  out.stage = "recognize-sl3";
  std::optional<std::vector<QVector>> h;
  if (opt.point_search) h = cartan_from_points(g, basis, small_points(s), rng);
  if (h) {
    Sl3Decision d;
    d.status = Sl3Decision::Status::Split;
    d.route = "rational-points";
    d.images = split_iso_sl3_q(g, *h);
    out.lie = std::move(d);
  } else {
    SplitOptions so;
    so.norm_bound = opt.norm_bound;
    out.lie = recognize_sl3(g, rng, so);
  }
  if (out.lie->status == Sl3Decision::Status::NonSplit) {
    out.status = PipelineVerdict::Status::NonSplit;
    out.reason = out.lie->reason.empty() ? "norm-obstruction" : out.lie->reason;
    return out;
  }
  if (out.lie->status == Sl3Decision::Status::Unknown) {
    out.reason = "norm search exhausted";
    return out;
  }

  // phi: sl3(Q) -> L, the inverse of g -> sl3(Q) on the Chevalley basis.
  out.stage = "module";
  std::vector<QVector> cols;
  for (const auto& m : out.lie->images) cols.push_back(sl3_coords(m));
  auto tinv = inverse(from_columns(cols, 8, Rat(0)));
  if (!tinv) throw PreconditionError("decide_and_parametrize: sl3 map is not bijective");
  Sl3Rep rep;
  for (std::size_t k = 0; k < 8; ++k) {
    QMatrix m(kN, kN);
    for (std::size_t j = 0; j < 8; ++j)
      if (sgn((*tinv)(j, k)) != 0) m += basis[j] * (*tinv)(j, k);
    rep.push_back(std::move(m));
  }
  try {
    auto w = highest_weight(rep);
    if (w[0] == 0 && w[1] == 3) {
      rep = compose_tau(rep);
      out.tau_applied = true;
    } else if (!(w[0] == 3 && w[1] == 0)) {
      out.status = PipelineVerdict::Status::Invalid;
      out.reason = "natural module is not a twist of Sym3";
      return out;
    }
    out.matrix = normalize_projective(module_isomorphism(sym3_rep(), rep));
  } catch (const PreconditionError& e) {
    out.status = PipelineVerdict::Status::Invalid;
    out.reason = std::string("natural module: ") + e.what();
    return out;
  }

  out.stage = "verify";
  if (!verify_parametrization(s, *out.matrix))
    throw PreconditionError("decide_and_parametrize: constructed map fails verification");
  out.status = PipelineVerdict::Status::Split;
  return out;
}

}  // namespace sbsplit
