#include "sbsplit/numfield.hpp"

#include <algorithm>

namespace sbsplit {

namespace {

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && a->modulus() == b->modulus());
}

void check_same(const FieldPtr& a, const FieldPtr& b) {
  if (!same_field(a, b)) throw PreconditionError("number field mismatch");
}

}  // namespace

// ---------------------------------------------------------------------------
// NumberField

NumberField::NumberField(UniPoly m) : modulus_(std::move(m)) {}

FieldPtr NumberField::create(const UniPoly& m) {
  if (m.degree() < 1) throw PreconditionError("field polynomial must have positive degree");
  UniPoly mm = m.monic();
  if (!is_irreducible_over_q(mm)) throw PreconditionError("field polynomial is reducible: " + to_string(mm));
  return std::shared_ptr<const NumberField>(new NumberField(std::move(mm)));
}

FieldPtr NumberField::rationals() {
  static const FieldPtr q(new NumberField(make_poly({0, 1})));
  return q;
}

std::vector<Rat> NumberField::reduce(std::vector<Rat> c) const {
  const std::size_t n = static_cast<std::size_t>(degree());
  const auto& m = modulus_.coeffs();
  for (std::size_t k = c.size(); k-- > n;) {
    if (sgn(c[k]) == 0) continue;
    Rat f = c[k];
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(m[i]) != 0) c[k - n + i] -= f * m[i];
  }
  c.resize(n);
  return c;
}

NfElem NumberField::generator() const {
  auto self = shared_from_this();
  if (degree() == 1) return NfElem(self, Rat(-modulus_.coeff(0)));
  std::vector<Rat> c(degree());
  c[1] = 1;
  return NfElem(self, c);
}

NfElem NumberField::zero() const { return NfElem(shared_from_this(), std::vector<Rat>(degree())); }
NfElem NumberField::one() const { return from_rat(Rat(1)); }
NfElem NumberField::from_rat(const Rat& q) const { return NfElem(shared_from_this(), q); }
NfElem NumberField::from_poly(const UniPoly& p) const {
  if (degree() == 1) return from_rat(p(-modulus_.coeff(0)));
  return NfElem(shared_from_this(), reduce(p.coeffs()));
}

// ---------------------------------------------------------------------------
// NfElem

NfElem::NfElem(FieldPtr f, std::vector<Rat> coords) : f_(std::move(f)), c_(std::move(coords)) {
  if (!f_) throw PreconditionError("element without field");
  if (c_.size() > static_cast<std::size_t>(f_->degree())) c_ = f_->reduce(std::move(c_));
  c_.resize(f_->degree());
}

NfElem::NfElem(FieldPtr f, const Rat& q) : f_(std::move(f)) {
  if (!f_) throw PreconditionError("element without field");
  c_.assign(f_->degree(), Rat(0));
  c_[0] = q;
}

bool NfElem::is_zero() const {
  for (const auto& c : c_)
    if (sgn(c) != 0) return false;
  return true;
}

bool NfElem::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

NfElem& NfElem::operator+=(const NfElem& o) {
  if (!o.f_) return *this;
  if (!f_) return *this = o;
  check_same(f_, o.f_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

NfElem& NfElem::operator-=(const NfElem& o) {
  if (!o.f_) return *this;
  if (!f_) return *this = -o;
  check_same(f_, o.f_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

NfElem& NfElem::operator*=(const NfElem& o) {
  if (!f_) return *this;
  if (!o.f_) {
    for (auto& c : c_) c = 0;
    return *this;
  }
  check_same(f_, o.f_);
  const std::size_t n = c_.size();
  if (n == 1) {
    c_[0] *= o.c_[0];
    return *this;
  }
  std::vector<Rat> prod(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(o.c_[j]) != 0) prod[i + j] += c_[i] * o.c_[j];
  }
  c_ = f_->reduce(std::move(prod));
  return *this;
}

NfElem& NfElem::operator*=(const Rat& q) {
  for (auto& c : c_) c *= q;
  return *this;
}

NfElem NfElem::operator-() const {
  NfElem r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

NfElem NfElem::inverse() const {
  if (!f_ || is_zero()) throw PreconditionError("inverse of zero field element");
  if (c_.size() == 1) return NfElem(f_, Rat(1) / c_[0]);
  UniPoly a(c_, Rat(0)), s, t;
  UniPoly g = poly_xgcd(a, f_->modulus(), s, t);
  if (g.degree() != 0) throw PreconditionError("element not invertible");
  return NfElem(f_, s.coeffs());
}

NfElem NfElem::pow(unsigned long e) const {
  NfElem r = f_ ? f_->one() : NfElem();
  NfElem b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

QMatrix NfElem::mult_matrix() const {
  if (!f_) throw PreconditionError("element without field");
  const std::size_t n = c_.size();
  QMatrix m(n, n);
  NfElem col = *this;
  const NfElem t = f_->generator();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col.c_[i];
    if (j + 1 < n) col *= t;
  }
  return m;
}

Rat NfElem::norm() const { return determinant(mult_matrix()); }
Rat NfElem::trace() const { return mult_matrix().trace(); }

UniPoly NfElem::min_poly() const {
  if (!f_) throw PreconditionError("element without field");
  const std::size_t n = c_.size();
  std::vector<std::vector<Rat>> powers{f_->one().c_};
  NfElem p = f_->one();
  for (std::size_t k = 1; k <= n; ++k) {
    p *= *this;
    QMatrix basis = from_columns(powers, n, Rat(0));
    if (auto x = solve(basis, p.c_)) {
      std::vector<Rat> coeffs(k + 1);
      for (std::size_t i = 0; i < k; ++i) coeffs[i] = -(*x)[i];
      coeffs[k] = 1;
      return UniPoly(coeffs, Rat(0));
    }
    powers.push_back(p.c_);
  }
  throw PreconditionError("minimal polynomial not found");
}

NfElem ScalarOps<NfElem>::one(const NfElem& like) {
  if (!like.field()) throw PreconditionError("field context required");
  return like.field()->one();
}

NfElem ScalarOps<NfElem>::from_rat(const NfElem& like, const Rat& q) {
  if (!like.field()) throw PreconditionError("field context required");
  return like.field()->from_rat(q);
}

// ---------------------------------------------------------------------------
// Factorization over number fields

NfPoly lift_poly(const UniPoly& p, const FieldPtr& k) {
  std::vector<NfElem> c;
  for (const auto& a : p.coeffs()) c.push_back(k->from_rat(a));
  return NfPoly(std::move(c), k->zero());
}

namespace {

UniPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  // Newton divided differences.
  const std::size_t n = xs.size();
  std::vector<Rat> d = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) d[i] = (d[i] - d[i - 1]) / (xs[i] - xs[i - j]);
  UniPoly p = UniPoly::constant(d[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) p = p * UniPoly({-xs[i], Rat(1)}, Rat(0)) + UniPoly::constant(d[i]);
  return p;
}

bool elem_less(const NfElem& a, const NfElem& b) {
  for (std::size_t i = a.coords().size(); i-- > 0;)
    if (a.coord(i) != b.coord(i)) return a.coord(i) < b.coord(i);
  return false;
}

bool nfpoly_less(const NfPoly& a, const NfPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (elem_less(a.coeff(i), b.coeff(i))) return true;
    if (elem_less(b.coeff(i), a.coeff(i))) return false;
  }
  return false;
}

/// Irreducible factors of a monic square-free polynomial over K.
std::vector<NfPoly> trager(const NfPoly& a) {
  const FieldPtr& k = a.zero().field();
  if (a.degree() <= 1) return {a};
  if (k->is_q()) {
    std::vector<Rat> c;
    for (const auto& e : a.coeffs()) c.push_back(e.rational_value());
    std::vector<NfPoly> out;
    for (const auto& [g, m] : factor_over_q(UniPoly(c, Rat(0)))) out.push_back(lift_poly(g, k));
    return out;
  }
  const NfElem theta = k->generator();
  const std::size_t total = static_cast<std::size_t>(a.degree() * k->degree());
  for (long s : {1L, -1L, 2L, -2L, 3L, -3L, 4L, 5L, 7L, 11L, 13L, 17L}) {
    NfPoly g = a.shift(theta * Rat(-s));
    std::vector<Rat> xs, ys;
    for (std::size_t i = 0; i <= total; ++i) {
      Rat x0(static_cast<long>(i));
      xs.push_back(x0);
      ys.push_back(g(k->from_rat(x0)).norm());
    }
    UniPoly norm = interpolate(xs, ys);
    if (poly_gcd(norm, norm.derivative()).degree() > 0) continue;
    auto fac = factor_over_q(norm);
    if (fac.size() == 1) return {a};
    std::vector<NfPoly> out;
    for (const auto& [ni, mult] : fac) {
      NfPoly h = poly_gcd(g, lift_poly(ni, k));
      out.push_back(h.shift(theta * Rat(s)).monic());
    }
    return out;
  }
  throw PreconditionError("no square-free norm found");
}

}  // namespace

NfFactorization nf_factor(const NfPoly& p) {
  if (p.is_zero()) throw PreconditionError("factorization of zero polynomial");
  if (!p.zero().field()) throw PreconditionError("polynomial without field context");
  NfFactorization out;
  for (const auto& [part, mult] : squarefree_parts(p))
    for (auto& f : trager(part)) out.emplace_back(std::move(f), mult);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (nfpoly_less(x.first, y.first)) return true;
    if (nfpoly_less(y.first, x.first)) return false;
    return x.second < y.second;
  });
  return out;
}

NfFactorization nf_factor(const UniPoly& p, const FieldPtr& k) { return nf_factor(lift_poly(p, k)); }

std::vector<NfElem> nf_roots(const UniPoly& p, const FieldPtr& k) {
  std::vector<NfElem> roots;
  for (const auto& [g, m] : nf_factor(p, k))
    if (g.degree() == 1)
      for (int i = 0; i < m; ++i) roots.push_back(-g.coeff(0));
  return roots;
}

// ---------------------------------------------------------------------------
// Extensions and splitting fields

struct FieldBuilder {
  static FieldPtr make(UniPoly m, std::vector<NumberField::Step> tower) {
    auto f = std::shared_ptr<NumberField>(new NumberField(std::move(m)));
    f->tower_ = std::move(tower);
    return f;
  }
};

NfElem embed(const NfElem& x, const NfElem& generator_image) {
  NfElem r = generator_image.field()->zero();
  for (std::size_t i = x.coords().size(); i-- > 0;) r = r * generator_image + generator_image.field()->from_rat(x.coord(i));
  return r;
}

Extension extend(const FieldPtr& k, const NfPoly& g0) {
  NfPoly g = g0.monic();
  const std::size_t n = static_cast<std::size_t>(k->degree());
  const std::size_t d = static_cast<std::size_t>(g.degree());
  if (d < 2) throw PreconditionError("extension polynomial must have degree >= 2");
  const std::size_t big = n * d;
  // Basis theta^i y^j at index j*n + i.
  QMatrix theta(big, big), y(big, big);
  QMatrix mt = k->generator().mult_matrix();
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) theta(j * n + a, j * n + b) = mt(a, b);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j + 1 < d; ++j) y((j + 1) * n + i, j * n + i) = 1;
    // theta^i y^d = -sum_l theta^i g_l y^l
    NfElem ti = k->generator().pow(i);
    for (std::size_t l = 0; l < d; ++l) {
      NfElem c = -(ti * g.coeff(l));
      for (std::size_t a = 0; a < n; ++a) y(l * n + a, (d - 1) * n + i) = c.coord(a);
    }
  }
  QVector one(big);
  one[0] = 1;
  for (long shift : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, 5L, 6L, 7L}) {
    QMatrix gamma = y + theta * Rat(shift);
    std::vector<QVector> krylov{one};
    for (std::size_t i = 1; i <= big; ++i) krylov.push_back(gamma * krylov.back());
    QMatrix basis = from_columns(std::vector<QVector>(krylov.begin(), krylov.end() - 1), big, Rat(0));
    if (rank(basis) < big) continue;
    auto minp = solve(basis, krylov.back());
    std::vector<Rat> m(big + 1);
    for (std::size_t i = 0; i < big; ++i) m[i] = -(*minp)[i];
    m[big] = 1;
    auto tower = k->tower();
    NumberField::Step step;
    for (std::size_t l = 0; l <= d; ++l) step.push_back(g.coeff(l).coords());
    tower.push_back(step);
    FieldPtr f = FieldBuilder::make(UniPoly(m, Rat(0)), std::move(tower));
    auto th = solve(basis, theta * one);
    auto yy = solve(basis, y * one);
    return {f, NfElem(f, *th), NfElem(f, *yy)};
  }
  throw PreconditionError("no primitive element found");
}

SplittingField splitting_field(const UniPoly& p) {
  if (p.is_zero()) throw PreconditionError("splitting field of zero polynomial");
  FieldPtr k = NumberField::rationals();
  while (true) {
    auto fac = nf_factor(p, k);
    const NfPoly* nonlinear = nullptr;
    for (const auto& [g, m] : fac)
      if (g.degree() > 1) {
        nonlinear = &g;
        break;
      }
    if (!nonlinear) {
      SplittingField s{k, {}};
      for (const auto& [g, m] : fac)
        for (int i = 0; i < m; ++i) s.roots.push_back(-g.coeff(0));
      return s;
    }
    k = extend(k, *nonlinear).field;
  }
}

// ---------------------------------------------------------------------------
// Cyclic cubics

Rat cubic_discriminant(const UniPoly& m) {
  if (m.degree() != 3) throw PreconditionError("cubic discriminant needs degree 3");
  const Rat &a0 = m.coeff(0), &a1 = m.coeff(1), &a2 = m.coeff(2), &a3 = m.coeff(3);
  return a2 * a2 * a1 * a1 - 4 * a3 * a1 * a1 * a1 - 4 * a2 * a2 * a2 * a0 - 27 * a3 * a3 * a0 * a0 +
         18 * a3 * a2 * a1 * a0;
}

std::optional<Rat> rational_sqrt(const Rat& x) {
  if (sgn(x) < 0) return std::nullopt;
  Int n = x.get_num(), d = x.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rat(rn, rd);
}

std::optional<Rat> is_galois_cubic(const UniPoly& m) {
  if (m.degree() != 3) throw PreconditionError("is_galois_cubic: degree must be 3");
  if (!is_irreducible_over_q(m)) throw PreconditionError("is_galois_cubic: reducible polynomial");
  return rational_sqrt(cubic_discriminant(m.monic()));
}

CubicGaloisData cubic_sigma(const UniPoly& m0) {
  UniPoly m = m0.monic();
  auto d = is_galois_cubic(m);
  if (!d) throw PreconditionError("cubic_sigma: not a Galois cubic");
  FieldPtr k = NumberField::create(m);
  NfElem a = k->generator();
  NfElem fp = k->from_poly(m.derivative());
  NfElem base = k->from_rat(-m.coeff(2)) - a;
  for (Rat sign : {Rat(1), Rat(-1)}) {
    NfElem s = (base + fp.inverse() * (*d * sign)) * Rat(1, 2);
    NfPoly mk = lift_poly(m, k);
    if (mk(s).is_zero() && !(s == a)) return {k, s};
  }
  throw PreconditionError("cubic_sigma: conjugate root not found");
}

NfElem CubicGaloisData::apply(const NfElem& x) const {
  check_same(x.field(), field);
  NfElem r = field->zero();
  for (std::size_t i = x.coords().size(); i-- > 0;) r = r * sigma_image + field->from_rat(x.coord(i));
  return r;
}

Rat nf_norm(const NfElem& e, const CubicGaloisData& g) {
  if (!g.field) throw PreconditionError("missing Galois data");
  NfElem s1 = g.apply(e);
  NfElem s2 = g.apply(s1);
  NfElem n = e * s1 * s2;
  if (!n.is_rational()) throw PreconditionError("norm is not rational");
  return n.rational_value();
}

}  // namespace sbsplit
