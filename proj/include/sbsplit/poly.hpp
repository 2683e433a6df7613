#pragma once

// Dense univariate polynomials over a field, lowest degree first.

#include <string>
#include <utility>
#include <vector>

#include "sbsplit/matrix.hpp"

namespace sbsplit {

template <class T>
class Poly {
 public:
  Poly() = default;
  /// Zero polynomial whose coefficients live in the same field as `zero`.
  explicit Poly(const T& zero) : zero_(ScalarOps<T>::zero(zero)) {}
  Poly(std::vector<T> coeffs, const T& zero) : zero_(ScalarOps<T>::zero(zero)), c_(std::move(coeffs)) { trim(); }

  static Poly constant(const T& a) { return Poly(std::vector<T>{a}, a); }
  static Poly x(const T& like) {
    T z = ScalarOps<T>::zero(like);
    return Poly({z, ScalarOps<T>::one(z)}, z);
  }
  /// x - a
  static Poly linear(const T& a) {
    T z = ScalarOps<T>::zero(a);
    return Poly({-a, ScalarOps<T>::one(z)}, z);
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  const T& zero() const { return zero_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
  const T& lc() const {
    if (c_.empty()) throw PreconditionError("leading coefficient of zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && ScalarOps<T>::is_zero(c_.back() - ScalarOps<T>::one(zero_)); }

  Poly monic() const {
    if (c_.empty()) return *this;
    T inv = ScalarOps<T>::inv(c_.back());
    Poly r = *this;
    for (auto& a : r.c_) a *= inv;
    return r;
  }

  T operator()(const T& x) const {
    T r = zero_;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  /// Evaluation at a matrix argument by Horner's rule.
  Matrix<T> eval_matrix(const Matrix<T>& m) const {
    Matrix<T> r(m.rows(), m.cols(), zero_);
    for (std::size_t i = c_.size(); i-- > 0;) {
      r = r * m;
      for (std::size_t k = 0; k < m.rows(); ++k) r(k, k) += c_[i];
    }
    return r;
  }

  Poly derivative() const {
    std::vector<T> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * ScalarOps<T>::from_rat(zero_, Rat(static_cast<long>(i))));
    return Poly(std::move(d), zero_);
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const T& s) {
    for (auto& a : c_) a *= s;
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const T& s) { return a *= s; }
  friend Poly operator*(const T& s, Poly a) { return a *= s; }
  Poly operator-() const {
    Poly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.zero_);
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (ScalarOps<T>::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r), a.zero_);
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!ScalarOps<T>::is_zero(a.c_[i] - b.c_[i])) return false;
    return true;
  }

  /// Quotient and remainder of Euclidean division.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw PreconditionError("polynomial division by zero");
    if (degree() < d.degree()) return {Poly(zero_), *this};
    std::vector<T> q(c_.size() - d.c_.size() + 1, zero_);
    std::vector<T> r = c_;
    T inv = ScalarOps<T>::inv(d.lc());
    const std::size_t dd = d.c_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      T f = r[k + dd] * inv;
      q[k] = f;
      if (ScalarOps<T>::is_zero(f)) continue;
      for (std::size_t j = 0; j <= dd; ++j) r[k + j] -= f * d.c_[j];
    }
    r.resize(dd);
    return {Poly(std::move(q), zero_), Poly(std::move(r), zero_)};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

  /// p(x + s)
  Poly shift(const T& s) const {
    Poly r(zero_);
    Poly lin({s, ScalarOps<T>::one(zero_)}, zero_);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * lin + constant(c_[i]);
    return r;
  }

  /// p(q(x))
  Poly compose(const Poly& q) const {
    Poly r(zero_);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * q + constant(c_[i]);
    return r;
  }

 private:
  void trim() {
    while (!c_.empty() && ScalarOps<T>::is_zero(c_.back())) c_.pop_back();
  }

  T zero_{};
  std::vector<T> c_;
};

template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended gcd: g = s a + t b with g monic.
template <class T>
Poly<T> poly_xgcd(const Poly<T>& a, const Poly<T>& b, Poly<T>& s, Poly<T>& t) {
  T z = a.zero();
  Poly<T> r0 = a, r1 = b;
  Poly<T> s0 = Poly<T>::constant(ScalarOps<T>::one(z)), s1(z);
  Poly<T> t0(z), t1 = Poly<T>::constant(ScalarOps<T>::one(z));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    auto t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = s0;
    t = t0;
    return r0;
  }
  T inv = ScalarOps<T>::inv(r0.lc());
  s = s0 * inv;
  t = t0 * inv;
  return r0 * inv;
}

/// Yun's square-free decomposition (characteristic zero): p = lc * prod a_i^i.
template <class T>
std::vector<std::pair<Poly<T>, int>> squarefree_parts(const Poly<T>& p) {
  if (p.is_zero()) throw PreconditionError("square-free decomposition of zero polynomial");
  std::vector<std::pair<Poly<T>, int>> out;
  Poly<T> f = p.monic();
  if (f.degree() == 0) return out;
  Poly<T> d = f.derivative();
  Poly<T> a = poly_gcd(f, d);
  Poly<T> b = f / a;
  Poly<T> c = d / a;
  Poly<T> e = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    Poly<T> g = poly_gcd(b, e);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = b / g;
    c = e / g;
    e = c - b.derivative();
  }
  return out;
}

using UniPoly = Poly<Rat>;

/// Builds a rational polynomial from integer coefficients, lowest degree first.
inline UniPoly make_poly(std::initializer_list<long> coeffs) {
  std::vector<Rat> c;
  for (long v : coeffs) c.emplace_back(v);
  return UniPoly(std::move(c), Rat(0));
}

/// "x^3 + x^2 - 2*x - 1" style rendering, for diagnostics.
std::string to_string(const UniPoly& p);

/// Characteristic polynomial det(x I - m).
template <class T>
Poly<T> char_poly(const Matrix<T>& m);

}  // namespace sbsplit

#include "sbsplit/linalg.hpp"

namespace sbsplit {

template <class T>
Poly<T> char_poly(const Matrix<T>& m) {
  return Poly<T>(char_poly_coeffs(m), m.zero_like());
}

}  // namespace sbsplit
