#pragma once

// Number fields Q[t]/(m) with a primitive generator, elements on the power basis,
// factorization over number fields (Trager), splitting fields and cyclic cubics.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "sbsplit/factor.hpp"

namespace sbsplit {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of a number field. A default-constructed element is a zero that adopts
/// the field of whatever it is combined with.
class NfElem {
 public:
  NfElem() = default;
  NfElem(FieldPtr f, std::vector<Rat> coords);
  NfElem(FieldPtr f, const Rat& q);

  const FieldPtr& field() const { return f_; }
  const std::vector<Rat>& coords() const { return c_; }
  Rat coord(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }

  bool is_zero() const;
  bool is_rational() const;
  /// Constant coordinate; only meaningful when is_rational().
  Rat rational_value() const { return coord(0); }

  NfElem& operator+=(const NfElem& o);
  NfElem& operator-=(const NfElem& o);
  NfElem& operator*=(const NfElem& o);
  NfElem& operator*=(const Rat& q);
  friend NfElem operator+(NfElem a, const NfElem& b) { return a += b; }
  friend NfElem operator-(NfElem a, const NfElem& b) { return a -= b; }
  friend NfElem operator*(NfElem a, const NfElem& b) { return a *= b; }
  friend NfElem operator*(NfElem a, const Rat& q) { return a *= q; }
  friend NfElem operator*(const Rat& q, NfElem a) { return a *= q; }
  NfElem operator-() const;
  friend bool operator==(const NfElem& a, const NfElem& b) { return (a - b).is_zero(); }

  NfElem inverse() const;
  NfElem pow(unsigned long e) const;

  /// Matrix of x -> self * x on the power basis (columns are images).
  QMatrix mult_matrix() const;
  Rat norm() const;
  Rat trace() const;
  UniPoly min_poly() const;

 private:
  FieldPtr f_;
  std::vector<Rat> c_;
};

class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  /// Field Q[t]/(m) for monic irreducible m; irreducibility is checked.
  static FieldPtr create(const UniPoly& m);
  /// Q itself, as the degree-1 field Q[t]/(t).
  static FieldPtr rationals();

  int degree() const { return modulus_.degree(); }
  const UniPoly& modulus() const { return modulus_; }
  bool is_q() const { return degree() == 1; }

  NfElem generator() const;
  NfElem zero() const;
  NfElem one() const;
  NfElem from_rat(const Rat& q) const;
  NfElem from_poly(const UniPoly& p) const;  // p(t)

  /// Defining polynomials of the extension steps that produced this field, each with
  /// coefficients in the field of the previous step (coordinates on its power basis).
  using Step = std::vector<std::vector<Rat>>;
  const std::vector<Step>& tower() const { return tower_; }

  /// Reduces a coefficient list modulo the defining polynomial.
  std::vector<Rat> reduce(std::vector<Rat> c) const;

 private:
  friend class NfElem;
  friend struct FieldBuilder;
  explicit NumberField(UniPoly m);

  UniPoly modulus_;
  std::vector<std::vector<Rat>> high_powers_;  // t^(n+k) on the power basis, k = 0..n-2
  std::vector<Step> tower_;
};

template <>
struct ScalarOps<NfElem> {
  static NfElem zero(const NfElem& like) { return like.field() ? like.field()->zero() : NfElem(); }
  static NfElem one(const NfElem& like);
  static bool is_zero(const NfElem& x) { return x.is_zero(); }
  static NfElem from_rat(const NfElem& like, const Rat& q);
  static NfElem inv(const NfElem& x) { return x.inverse(); }
};

using NfPoly = Poly<NfElem>;
using NfFactorization = std::vector<std::pair<NfPoly, int>>;

/// Image of a rational polynomial in K[x].
NfPoly lift_poly(const UniPoly& p, const FieldPtr& k);

/// Monic irreducible factors over K with multiplicities (Trager's norm method).
NfFactorization nf_factor(const NfPoly& p);
NfFactorization nf_factor(const UniPoly& p, const FieldPtr& k);

/// Roots of p in K with multiplicity.
std::vector<NfElem> nf_roots(const UniPoly& p, const FieldPtr& k);

/// Result of adjoining a root: the new field, the image of the old generator, and
/// the adjoined root.
struct Extension {
  FieldPtr field;
  NfElem old_generator;
  NfElem root;
};

/// K[y]/(g(y)) for g irreducible over K, with a primitive element y + k * theta.
Extension extend(const FieldPtr& k, const NfPoly& g);

/// Maps an element of K into an extension given the image of K's generator.
NfElem embed(const NfElem& x, const NfElem& generator_image);

struct SplittingField {
  FieldPtr field;
  std::vector<NfElem> roots;  // with multiplicity
};

/// Smallest tower over Q over which p splits into linear factors.
SplittingField splitting_field(const UniPoly& p);

struct CubicGaloisData {
  FieldPtr field;
  NfElem sigma_image;  // sigma(t)

  NfElem apply(const NfElem& x) const;
};

/// Discriminant of a cubic (any degree-3 polynomial).
Rat cubic_discriminant(const UniPoly& m);
/// For a monic irreducible cubic: d >= 0 with d^2 = disc(m), if disc is a square.
std::optional<Rat> is_galois_cubic(const UniPoly& m);
CubicGaloisData cubic_sigma(const UniPoly& m);
/// x sigma(x) sigma^2(x), checked to be rational.
Rat nf_norm(const NfElem& e, const CubicGaloisData& g);

/// Exact square root of a rational, if it exists.
std::optional<Rat> rational_sqrt(const Rat& x);

}  // namespace sbsplit
