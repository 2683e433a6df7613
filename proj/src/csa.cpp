#include "sbsplit/csa.hpp"

#include <algorithm>

namespace sbsplit {

namespace {

// Semi-echelon basis used to test membership while a span grows.
class GrowingSpan {
 public:
  explicit GrowingSpan(std::size_t n) : n_(n) {}

  /// Adds v if it is independent of the current span; returns whether it was added.
  bool add(const QVector& v) {
    QVector r = reduce(v);
    std::size_t p = 0;
    while (p < n_ && sgn(r[p]) == 0) ++p;
    if (p == n_) return false;
    Rat inv = 1 / r[p];
    for (auto& x : r) x *= inv;
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  std::size_t size() const { return rows_.size(); }

 private:
  QVector reduce(QVector v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Rat f = v[pivots_[i]];
      if (sgn(f) == 0) continue;
      for (std::size_t k = 0; k < n_; ++k)
        if (sgn(rows_[i][k]) != 0) v[k] -= f * rows_[i][k];
    }
    return v;
  }

  std::size_t n_;
  std::vector<QVector> rows_;
  std::vector<std::size_t> pivots_;
};

QVector add(QVector x, const QVector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return x;
}

QVector sub(QVector x, const QVector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
  return x;
}

QVector scale(QVector x, const Rat& s) {
  for (auto& v : x) v *= s;
  return x;
}

QVector bracket(const AssocAlg& a, const QVector& x, const QVector& y) { return sub(a.mul(x, y), a.mul(y, x)); }

Rat scalar_value(const AssocAlg& a, const QVector& x) {
  const QVector& u = a.unit();
  std::size_t k = 0;
  while (sgn(u[k]) == 0) ++k;
  return x[k] / u[k];
}

std::optional<CyclicPresentation> galois_presentation(const AssocAlg& alg, const QVector& x, const UniPoly& m,
                                                      std::optional<QVector>& zero_divisor) {
  CyclicPresentation p;
  p.a = x;
  p.galois = cubic_sigma(m);
  QVector sa = field_element(alg, p, p.galois.sigma_image);
  // b x - sigma(x) b = 0 is linear in b.
  QMatrix sys = alg.right_matrix(x) - alg.left_matrix(sa);
  auto ker = kernel_basis(sys);
  if (ker.empty()) return std::nullopt;
  std::vector<QVector> candidates = ker;
  for (std::size_t i = 1; i < ker.size(); ++i) candidates.push_back(add(ker[0], ker[i]));
  for (const auto& b : candidates) {
    if (is_zero_vector(b)) continue;
    if (!alg.inverse(b)) {
      zero_divisor = b;
      return std::nullopt;
    }
    QVector b3 = alg.pow(b, 3);
    if (!alg.is_scalar(b3)) continue;
    p.b = b;
    p.beta = scalar_value(alg, b3);
    if (verify_presentation(alg, p)) return p;
  }
  return std::nullopt;
}

}  // namespace

AssocAlg::AssocAlg(std::size_t dim, std::vector<std::vector<QVector>> mt, QVector unit)
    : dim_(dim), mt_(std::move(mt)), unit_(std::move(unit)) {
  if (mt_.size() != dim_ || unit_.size() != dim_) throw InvalidInput("multiplication table has wrong size");
  for (const auto& row : mt_) {
    if (row.size() != dim_) throw InvalidInput("multiplication table has wrong size");
    for (const auto& v : row)
      if (v.size() != dim_) throw InvalidInput("multiplication table entry has wrong size");
  }
}

QVector AssocAlg::basis(std::size_t i) const {
  QVector v(dim_);
  v[i] = 1;
  return v;
}

QVector AssocAlg::scalar(const Rat& q) const { return scale(unit_, q); }

QVector AssocAlg::mul(const QVector& x, const QVector& y) const {
  QVector r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(y[j]) == 0) continue;
      Rat xy = x[i] * y[j];
      const QVector& c = mt_[i][j];
      for (std::size_t k = 0; k < dim_; ++k)
        if (sgn(c[k]) != 0) r[k] += xy * c[k];
    }
  }
  return r;
}

QVector AssocAlg::pow(const QVector& x, unsigned e) const {
  QVector r = unit_;
  for (unsigned i = 0; i < e; ++i) r = mul(r, x);
  return r;
}

QMatrix AssocAlg::left_matrix(const QVector& x) const {
  QMatrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        if (sgn(mt_[i][j][k]) != 0) m(k, j) += x[i] * mt_[i][j][k];
  }
  return m;
}

QMatrix AssocAlg::right_matrix(const QVector& x) const {
  QMatrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        if (sgn(mt_[j][i][k]) != 0) m(k, j) += x[i] * mt_[j][i][k];
  }
  return m;
}

std::optional<QVector> AssocAlg::inverse(const QVector& x) const {
  auto y = solve(left_matrix(x), unit_);
  if (!y) return std::nullopt;
  if (!(mul(*y, x) == unit_)) return std::nullopt;
  // A one-sided solution of a singular system can still satisfy x y = 1 only if
  // the left matrix is invertible, so a rank check settles it.
  if (rank(left_matrix(x)) != dim_) return std::nullopt;
  return y;
}

bool AssocAlg::is_scalar(const QVector& x) const { return x == scalar(scalar_value(*this, x)); }

QVector AssocAlg::eval(const UniPoly& p, const QVector& x) const {
  QVector r(dim_);
  for (std::size_t i = p.coeffs().size(); i-- > 0;) r = add(mul(r, x), scalar(p.coeffs()[i]));
  return r;
}

void AssocAlg::validate() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!(mul(unit_, basis(i)) == basis(i)) || !(mul(basis(i), unit_) == basis(i)))
      throw InvalidInput("unit axiom fails on basis element " + std::to_string(i));
  }
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        if (!(mul(mt_[i][j], basis(k)) == mul(basis(i), mt_[j][k])))
          throw InvalidInput("associativity fails on basis triple (" + std::to_string(i) + "," + std::to_string(j) +
                             "," + std::to_string(k) + ")");
}

MatrixAlgebra algebra_from_matrices(const std::vector<QMatrix>& basis) {
  MatrixSpan span(basis);
  const std::size_t n = basis.size();
  std::vector<std::vector<QVector>> mt(n, std::vector<QVector>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto c = span.coords(basis[i] * basis[j]);
      if (!c) throw PreconditionError("matrix span is not closed under multiplication");
      mt[i][j] = std::move(*c);
    }
  auto unit = span.coords(QMatrix::identity(basis[0].rows()));
  if (!unit) throw PreconditionError("matrix span does not contain the identity");
  return {AssocAlg(n, std::move(mt), std::move(*unit)), basis};
}

MatrixAlgebra assoc_closure(const std::vector<QMatrix>& gens) {
  if (gens.empty()) throw PreconditionError("assoc_closure: no generators");
  const std::size_t d = gens[0].rows();
  GrowingSpan span(d * d);
  std::vector<QMatrix> basis;
  auto offer = [&](const QMatrix& m) {
    if (span.add(vec(m))) basis.push_back(m);
  };
  offer(QMatrix::identity(d));
  for (const auto& g : gens) {
    if (g.rows() != d || g.cols() != d) throw PreconditionError("assoc_closure: generators of different shapes");
    offer(g);
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (const auto& g : gens) offer(g * basis[i]);
  return algebra_from_matrices(basis);
}

CentreInfo centre_and_simplicity(const AssocAlg& a) {
  const std::size_t n = a.dim();
  CentreInfo out;
  QMatrix sys(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) sys(i * n + k, j) = a.mt(j, i)[k] - a.mt(i, j)[k];
  out.centre_dim = n - rank(sys);
  std::vector<Rat> tr(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t m = 0; m < n; ++m) tr[k] += a.mt(k, m)[m];
  QMatrix form(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) form(i, j) += a.mt(i, j)[k] * tr[k];
  out.semisimple = rank(form) == n;
  out.central_simple = out.semisimple && out.centre_dim == 1;
  return out;
}

UniPoly min_poly_element(const AssocAlg& a, const QVector& x) {
  std::vector<QVector> powers{a.unit()};
  while (true) {
    QVector next = a.mul(powers.back(), x);
    auto c = solve(from_columns(powers, a.dim(), Rat(0)), next);
    if (c) {
      std::vector<Rat> coeffs;
      for (const auto& v : *c) coeffs.push_back(-v);
      coeffs.push_back(1);
      return UniPoly(std::move(coeffs), Rat(0));
    }
    powers.push_back(std::move(next));
  }
}

bool verify_split_witness(const AssocAlg& a, const SplitWitness& w) {
  if (a.dim() != 9 || w.images.size() != 9) return false;
  QMatrix unit(3, 3);
  for (std::size_t k = 0; k < 9; ++k) unit += w.images[k] * a.unit()[k];
  if (!(unit == QMatrix::identity(3))) return false;
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) {
      QMatrix rhs(3, 3);
      for (std::size_t k = 0; k < 9; ++k)
        if (sgn(a.mt(i, j)[k]) != 0) rhs += w.images[k] * a.mt(i, j)[k];
      if (!(w.images[i] * w.images[j] == rhs)) return false;
    }
  std::vector<QVector> cols;
  for (const auto& m : w.images) cols.push_back(vec(m));
  return rank(from_columns(cols, 9, Rat(0))) == 9;
}

SplitWitness witness_from_left_ideal(const AssocAlg& a, const std::vector<QVector>& ideal) {
  if (ideal.size() != 3) throw PreconditionError("left ideal must be 3-dimensional");
  const std::size_t n = a.dim();
  QMatrix l = from_columns(ideal, n, Rat(0));
  if (rank(l) != 3) throw PreconditionError("left ideal basis is dependent");
  SplitWitness w;
  w.left_ideal = ideal;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<QVector> imgs;
    for (const auto& v : ideal) imgs.push_back(a.mul(a.basis(i), v));
    auto m = solve_many(l, from_columns(imgs, n, Rat(0)));
    if (!m) throw PreconditionError("subspace is not a left ideal");
    w.images.push_back(std::move(*m));
  }
  if (!verify_split_witness(a, w)) throw PreconditionError("left action is not an isomorphism onto M3(Q)");
  return w;
}

SplitWitness zero_divisor_to_split(const AssocAlg& a, const QVector& z) {
  if (is_zero_vector(z)) throw PreconditionError("zero is not a zero divisor");
  QMatrix r = a.right_matrix(z);
  auto ker = kernel_basis(r);
  if (ker.empty()) throw PreconditionError("element is invertible, not a zero divisor");
  auto image = row_space(r.transpose());
  if (image.size() == 3) return witness_from_left_ideal(a, image);
  if (ker.size() == 3) return witness_from_left_ideal(a, ker);
  throw PreconditionError("zero divisor gives no 3-dimensional left ideal");
}

std::optional<QVector> find_t(const AssocAlg& a, const QVector& x) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    QVector t = a.basis(i);
    if (!is_zero_vector(bracket(a, bracket(a, t, x), x))) return t;
  }
  return std::nullopt;
}

std::optional<QVector> z_element(const AssocAlg& a, const QVector& x, const QVector& t) {
  QVector c = bracket(a, t, x);
  auto cinv = a.inverse(c);
  if (!cinv) throw ZeroDivisorFound{c};
  QVector y = a.mul(a.mul(c, x), *cinv);
  QVector z = bracket(a, x, y);
  if (a.is_scalar(z) || !a.is_scalar(a.pow(z, 3))) return std::nullopt;
  return z;
}

QVector field_element(const AssocAlg& alg, const CyclicPresentation& p, const NfElem& e) {
  QVector r(alg.dim());
  QVector pw = alg.unit();
  const int n = p.galois.field->degree();
  for (int k = 0; k < n; ++k) {
    if (sgn(e.coord(k)) != 0) r = add(r, scale(pw, e.coord(k)));
    pw = alg.mul(pw, p.a);
  }
  return r;
}

bool verify_presentation(const AssocAlg& alg, const CyclicPresentation& p) {
  if (alg.dim() != 9 || sgn(p.beta) == 0) return false;
  QVector sa = field_element(alg, p, p.galois.sigma_image);
  if (!(alg.mul(p.b, p.a) == alg.mul(sa, p.b))) return false;
  if (!(alg.pow(p.b, 3) == alg.scalar(p.beta))) return false;
  std::vector<QVector> cols;
  for (unsigned j = 0; j < 3; ++j)
    for (unsigned i = 0; i < 3; ++i) cols.push_back(alg.mul(alg.pow(p.a, i), alg.pow(p.b, j)));
  return rank(from_columns(cols, 9, Rat(0))) == 9;
}

AssocAlg cyclic_table(const CubicGaloisData& e, const Rat& beta) {
  if (sgn(beta) == 0) throw PreconditionError("cyclic_table: beta must be nonzero");
  if (!e.field || e.field->degree() != 3) throw PreconditionError("cyclic_table: field must be cubic");
  const FieldPtr& k = e.field;
  NfElem t = k->generator();
  // sigma^j(t^k) for j, k < 3.
  std::array<std::array<NfElem, 3>, 3> sig;
  for (unsigned kk = 0; kk < 3; ++kk) {
    sig[0][kk] = t.pow(kk);
    for (unsigned j = 1; j < 3; ++j) sig[j][kk] = e.apply(sig[j - 1][kk]);
  }
  std::vector<std::vector<QVector>> mt(9, std::vector<QVector>(9, QVector(9)));
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j)
      for (unsigned kk = 0; kk < 3; ++kk)
        for (unsigned l = 0; l < 3; ++l) {
          NfElem c = t.pow(i) * sig[j][kk];
          unsigned jl = j + l;
          Rat f = jl >= 3 ? beta : Rat(1);
          for (unsigned r = 0; r < 3; ++r) mt[i + 3 * j][kk + 3 * l][r + 3 * (jl % 3)] = c.coord(r) * f;
        }
  QVector unit(9);
  unit[0] = 1;
  return AssocAlg(9, std::move(mt), std::move(unit));
}

CyclicPresentation table_presentation(const CubicGaloisData& e, const Rat& beta) {
  CyclicPresentation p;
  p.a = QVector(9);
  p.a[1] = 1;
  p.b = QVector(9);
  p.b[3] = 1;
  p.galois = e;
  p.beta = beta;
  return p;
}

QVector ElementSampler::next() {
  const std::size_t n = alg_.dim();
  while (true) {
    QVector x(n);
    std::size_t idx = index_++;
    if (idx < n) {
      x[idx] = 1;
    } else if (idx < n + n * (n - 1)) {
      std::size_t p = (idx - n) / 2;
      int sign = (idx - n) % 2 == 0 ? 1 : -1;
      // p enumerates pairs i < j in lexicographic order.
      std::size_t i = 0;
      while (p >= n - 1 - i) {
        p -= n - 1 - i;
        ++i;
      }
      x[i] = 1;
      x[i + 1 + p] = sign;
    } else {
      long bound = 1L << std::min<long>(random_count_ / 16, 20);
      ++random_count_;
      for (auto& c : x) c = rng_.uniform(-bound, bound);
    }
    if (!is_zero_vector(x) && !alg_.is_scalar(x)) return x;
  }
}

PresentationStep presentation_from(const AssocAlg& a, const QVector& x, bool use_chain) {
  PresentationStep step;
  // Screens x: a zero divisor from a reducible minimal polynomial, or a presentation
  // when the minimal polynomial is a Galois cubic.
  auto screen = [&](const QVector& v, UniPoly& m) -> bool {
    m = min_poly_element(a, v);
    if (m.degree() <= 1) return true;
    auto fac = factor_over_q(m);
    if (fac.size() > 1 || fac[0].second > 1) {
      step.zero_divisor = a.eval(fac[0].first, v);
      return true;
    }
    if (m.degree() != 3) return true;
    if (is_galois_cubic(m)) {
      step.presentation = galois_presentation(a, v, m, step.zero_divisor);
      return true;
    }
    return false;
  };
  try {
    UniPoly m;
    if (screen(x, m) || !use_chain) return step;
    auto t = find_t(a, x);
    if (!t) return step;
    auto z = z_element(a, x, *t);
    if (!z) return step;
    Rat s = scalar_value(a, a.pow(*z, 3));
    Rat r;
    if (rational_cube_root(s, r)) {
      step.zero_divisor = sub(*z, a.scalar(r));
      return step;
    }
    const QVector& b = *z;
    auto tb = find_t(a, b);
    if (!tb) return step;
    auto zb = z_element(a, b, *tb);
    if (!zb) return step;
    screen(a.mul(b, *zb), m);
  } catch (const ZeroDivisorFound& zd) {
    step.zero_divisor = zd.element;
  }
  return step;
}

SplitWitness split_from_norm_solution(const AssocAlg& alg, const CyclicPresentation& p, const NfElem& x) {
  if (nf_norm(x, p.galois) * p.beta != 1) throw PreconditionError("x does not solve the norm equation");
  QVector xa = field_element(alg, p, x);
  QVector xsx = field_element(alg, p, x * p.galois.apply(x));
  QVector b2 = alg.mul(p.b, p.b);
  QVector w = add(add(alg.unit(), alg.mul(xa, p.b)), alg.mul(xsx, b2));
  std::vector<QVector> ideal{w, alg.mul(p.a, w), alg.mul(p.a, alg.mul(p.a, w))};
  return witness_from_left_ideal(alg, ideal);
}

std::string to_string(CsaResult::Status s) {
  switch (s) {
    case CsaResult::Status::Split:
      return "split";
    case CsaResult::Status::NonSplit:
      return "non-split";
    case CsaResult::Status::Unknown:
      return "unknown";
  }
  return "unknown";
}

CsaResult decide_cyclic(const AssocAlg& alg, const CyclicPresentation& p, long norm_bound) {
  CsaResult out;
  out.presentation = p;
  out.norm_bound = norm_bound;
  auto r = solve_norm({p.galois, p.beta}, norm_bound);
  switch (r.status) {
    case NormResult::Status::Solution:
      out.status = CsaResult::Status::Split;
      out.route = "norm-solution";
      out.witness = split_from_norm_solution(alg, p, *r.solution);
      break;
    case NormResult::Status::NoSolution:
      out.status = CsaResult::Status::NonSplit;
      out.route = "local-obstruction";
      out.certificate = r.certificate;
      break;
    case NormResult::Status::Unknown:
      break;
  }
  return out;
}

CsaResult split_csa(const AssocAlg& alg, Rng& rng, const SplitOptions& opt) {
  if (alg.dim() != 9) throw PreconditionError("split_csa: algebra must have dimension 9");
  const int sparse = static_cast<int>(alg.dim() * alg.dim());
  ElementSampler sampler(alg, rng);
  std::vector<CyclicPresentation> found;
  for (int n = 0; n < opt.max_samples; ++n) {
    if (n >= sparse && !found.empty()) break;
    if (static_cast<int>(found.size()) >= opt.max_presentations) break;
    auto step = presentation_from(alg, sampler.next(), n >= sparse);
    if (step.zero_divisor) {
      CsaResult out;
      out.status = CsaResult::Status::Split;
      out.route = "zero-divisor";
      out.witness = zero_divisor_to_split(alg, *step.zero_divisor);
      return out;
    }
    if (step.presentation) found.push_back(std::move(*step.presentation));
  }
  auto bits = [](const CyclicPresentation& p) {
    std::size_t b = mpz_sizeinbase(p.beta.get_num_mpz_t(), 2) + mpz_sizeinbase(p.beta.get_den_mpz_t(), 2);
    for (const auto& c : p.galois.field->modulus().coeffs())
      b += mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2);
    return b;
  };
  std::stable_sort(found.begin(), found.end(),
                   [&](const CyclicPresentation& x, const CyclicPresentation& y) { return bits(x) < bits(y); });
  CsaResult out;
  out.presentations_tried = static_cast<int>(found.size());
  for (const auto& p : found) {
    if (auto cert = local_obstruction({p.galois, p.beta})) {
      out.status = CsaResult::Status::NonSplit;
      out.route = "local-obstruction";
      out.presentation = p;
      out.certificate = cert;
      return out;
    }
  }
  for (long bound = 4;; bound *= 2) {
    bound = std::min(bound, opt.norm_bound);
    for (const auto& p : found) {
      CsaResult r = decide_cyclic(alg, p, bound);
      r.presentations_tried = out.presentations_tried;
      if (r.status != CsaResult::Status::Unknown) return r;
    }
    out.norm_bound = bound;
    if (bound >= opt.norm_bound) break;
  }
  return out;
}

std::vector<QMatrix> restricted_rep(const SplitIso& iso) {
  const FieldPtr& f = iso.field;
  const std::size_t n = static_cast<std::size_t>(f->degree());
  std::vector<NfElem> theta_pow{f->one()};
  for (std::size_t k = 1; k < n; ++k) theta_pow.push_back(theta_pow.back() * f->generator());
  std::vector<QMatrix> out;
  for (const auto& m : iso.images) {
    QMatrix r(3 * n, 3 * n);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        if (m(i, j).is_zero()) continue;
        for (std::size_t k = 0; k < n; ++k) {
          NfElem v = m(i, j) * theta_pow[k];
          for (std::size_t l = 0; l < n; ++l) r(i * n + l, j * n + k) = v.coord(l);
        }
      }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sbsplit

namespace sbsplit {

LieAlgebra commutator_algebra(const AssocAlg& a) {
  GrowingSpan span(a.dim());
  std::vector<QMatrix> basis;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) {
      QVector c = bracket(a, a.basis(i), a.basis(j));
      if (span.add(c)) basis.push_back(a.left_matrix(c));
    }
  return LieAlgebra::from_matrices(basis);
}

std::string to_string(Sl3Decision::Status s) {
  switch (s) {
    case Sl3Decision::Status::Split:
      return "split";
    case Sl3Decision::Status::NonSplit:
      return "non-split";
    case Sl3Decision::Status::Unknown:
      return "unknown";
  }
  return "unknown";
}

Sl3Decision recognize_sl3(const LieAlgebra& g0, Rng& rng, const SplitOptions& opt) {
  Sl3Decision out;
  if (!killing_and_checks(g0).simple8) {
    out.status = Sl3Decision::Status::NonSplit;
    out.reason = "not-simple";
    return out;
  }
  // Work on an LLL-reduced basis of ad(g); images are mapped back at the end.
  std::vector<QMatrix> ads;
  for (std::size_t i = 0; i < g0.dim(); ++i) ads.push_back(g0.ad(g0.unit(i)));
  QMatrix t;
  LieAlgebra g = LieAlgebra::from_matrices(reduce_matrix_basis(ads, &t));
  QMatrix tinv = *inverse(t);
  auto pull_back = [&](const std::vector<QMatrix>& images) {
    std::vector<QMatrix> res;
    for (std::size_t k = 0; k < g0.dim(); ++k) {
      QMatrix m(3, 3);
      for (std::size_t i = 0; i < g0.dim(); ++i)
        if (sgn(tinv(i, k)) != 0) m += images[i] * tinv(i, k);
      res.push_back(std::move(m));
    }
    if (!is_lie_hom(g0, res)) throw PreconditionError("recognize_sl3: constructed map is not a homomorphism");
    return res;
  };

  CartanData cartan = cartan_subalgebra(g, rng);
  if (cartan.split) {
    out.status = Sl3Decision::Status::Split;
    out.route = "split-cartan";
    out.images = pull_back(split_iso_sl3_q(g, cartan.basis));
    return out;
  }
  out.route = "csa";
  auto gen = generic_cartan_element(g, cartan.basis);
  FieldPtr f = splitting_field(gen.root_poly).field;
  out.field_degree = f->degree();
  auto rho = restricted_rep(split_iso_sl3(g, cartan.basis, f));
  MatrixAlgebra closure = assoc_closure(rho);
  out.assoc_dim = closure.alg.dim();
  if (out.assoc_dim != 9) {
    out.status = Sl3Decision::Status::NonSplit;
    out.reason = "assoc-dim";
    return out;
  }
  // The closure basis is 1 followed by rho of the reduced Lie basis, so its structure
  // constants stay as small as those of g.
  const MatrixAlgebra& a = closure;
  if (!centre_and_simplicity(a.alg).central_simple) {
    out.status = Sl3Decision::Status::NonSplit;
    out.reason = "assoc-dim";
    return out;
  }
  CsaResult r = split_csa(a.alg, rng, opt);
  out.csa = r;
  if (r.status == CsaResult::Status::NonSplit) {
    out.status = Sl3Decision::Status::NonSplit;
    return out;
  }
  if (r.status == CsaResult::Status::Unknown) return out;
  MatrixSpan span(a.basis);
  std::vector<QMatrix> images;
  for (const auto& m : rho) {
    QVector c = *span.coords(m);
    QMatrix img(3, 3);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (sgn(c[i]) != 0) img += r.witness->images[i] * c[i];
    images.push_back(std::move(img));
  }
  out.images = pull_back(images);
  out.status = Sl3Decision::Status::Split;
  return out;
}

}  // namespace sbsplit
