#pragma once

// Lie algebras by structure constants over Q: Killing form, Cartan subalgebras,
// splitting, recognition of sl3, the diagram automorphism and highest-weight
// tooling for 10-dimensional modules.

#include <array>
#include <vector>

#include "sbsplit/numfield.hpp"
#include "sbsplit/rng.hpp"

namespace sbsplit {

class LieAlgebra {
 public:
  LieAlgebra() = default;
  /// sc[i][j] = coordinates of [b_i, b_j].
  LieAlgebra(std::size_t dim, std::vector<std::vector<QVector>> sc);

  /// Structure constants of the span of linearly independent matrices closed under
  /// the commutator.
  static LieAlgebra from_matrices(const std::vector<QMatrix>& basis);

  std::size_t dim() const { return dim_; }
  const QVector& sc(std::size_t i, std::size_t j) const { return sc_[i][j]; }

  /// Throws InvalidInput on antisymmetry or Jacobi violations.
  void validate() const;

  template <class T>
  std::vector<T> bracket(const std::vector<T>& x, const std::vector<T>& y) const {
    T zero = x.empty() ? T() : ScalarOps<T>::zero(x.front());
    std::vector<T> r(dim_, zero);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (ScalarOps<T>::is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (ScalarOps<T>::is_zero(y[j])) continue;
        T xy = x[i] * y[j];
        const QVector& c = sc_[i][j];
        for (std::size_t k = 0; k < dim_; ++k)
          if (sgn(c[k]) != 0) r[k] += xy * c[k];
      }
    }
    return r;
  }

  /// Matrix of y -> [x, y].
  template <class T>
  Matrix<T> ad(const std::vector<T>& x) const {
    T zero = x.empty() ? T() : ScalarOps<T>::zero(x.front());
    Matrix<T> m(dim_, dim_, zero);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (ScalarOps<T>::is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        const QVector& c = sc_[i][j];
        for (std::size_t k = 0; k < dim_; ++k)
          if (sgn(c[k]) != 0) m(k, j) += x[i] * c[k];
      }
    }
    return m;
  }

  QVector unit(std::size_t i) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::vector<QVector>> sc_;
};

/// Coordinates of matrices in the span of a fixed list of matrices.
class MatrixSpan {
 public:
  MatrixSpan() = default;
  explicit MatrixSpan(std::vector<QMatrix> basis);
  std::size_t size() const { return basis_.size(); }
  const std::vector<QMatrix>& basis() const { return basis_; }
  std::optional<QVector> coords(const QMatrix& m) const;
  QMatrix combine(const QVector& c) const;

 private:
  std::vector<QMatrix> basis_;
  std::vector<std::size_t> rows_;  // entries on which the basis is independent
  QMatrix inv_;                    // inverse of the basis restricted to rows_
};

struct KillingChecks {
  QMatrix killing;
  bool semisimple = false;
  bool simple8 = false;
  std::size_t centroid_dim = 0;
};

QMatrix killing_form(const LieAlgebra& g);
KillingChecks killing_and_checks(const LieAlgebra& g);

struct CartanData {
  std::vector<QVector> basis;
  bool split = false;
  /// Largest degree of an irreducible factor of char(ad x) / lambda^dim H for the regular
  /// element x = basis[0]: 1 split, 2 quadratic, 3 cyclic cubic, 6 generic sl3 forms.
  int root_degree = 0;
};

bool is_nilpotent_subalgebra(const LieAlgebra& g, const std::vector<QVector>& basis);
bool is_self_normalizing(const LieAlgebra& g, const std::vector<QVector>& basis);
/// Cartan subalgebra as the Fitting null component of ad x for a regular random x.
CartanData cartan_subalgebra(const LieAlgebra& g, Rng& rng);
/// Checks that ad h splits over Q with a full eigenbasis for the Cartan basis and for
/// three random combinations.
bool is_split_cartan(const LieAlgebra& g, const std::vector<QVector>& cartan, Rng& rng);

/// LLL-reduced basis of the lattice spanned by the matrices, each first scaled to be
/// primitive integral. `transform` receives T with reduced_i = sum_k T(k, i) basis_k.
std::vector<QMatrix> reduce_matrix_basis(const std::vector<QMatrix>& basis, QMatrix* transform = nullptr);

/// A Cartan element whose adjoint has six distinct nonzero eigenvalues, scaled so its
/// characteristic polynomial is integral; `root_poly` is that polynomial divided by x^2.
struct GenericCartanElement {
  QVector h;
  UniPoly root_poly;
};
GenericCartanElement generic_cartan_element(const LieAlgebra& g, const std::vector<QVector>& cartan);

/// Chevalley basis of sl3: e1 = E12, e2 = E23, e3 = E13, f1 = E21, f2 = E32, f3 = E31,
/// h1 = E11 - E22, h2 = E22 - E33.
const std::vector<QMatrix>& sl3_basis();
const LieAlgebra& sl3_algebra();
/// The automorphism e1 <-> e2, f1 <-> f2, e3 -> -e3, f3 -> -f3, h1 <-> h2, as an 8x8
/// matrix on Chevalley coordinates (columns are images).
QMatrix tau_matrix();
/// Coordinates of a traceless 3x3 matrix in the Chevalley basis.
template <class T>
std::vector<T> sl3_coords(const Matrix<T>& m) {
  T z = m.zero_like();
  std::vector<T> c(8, z);
  c[0] = m(0, 1);
  c[1] = m(1, 2);
  c[2] = m(0, 2);
  c[3] = m(1, 0);
  c[4] = m(2, 1);
  c[5] = m(2, 0);
  c[6] = m(0, 0);
  c[7] = m(0, 0) + m(1, 1);
  return c;
}

/// Isomorphism g (x) F -> sl3(F) given as the images of the basis of g.
struct SplitIso {
  FieldPtr field;
  std::vector<Matrix<NfElem>> images;
};

/// Root-space construction over F; F must contain the eigenvalues of ad h for the
/// generic Cartan element. Verified on all basis pairs.
SplitIso split_iso_sl3(const LieAlgebra& g, const std::vector<QVector>& cartan, const FieldPtr& f);
/// Same over Q for a split Cartan subalgebra.
std::vector<QMatrix> split_iso_sl3_q(const LieAlgebra& g, const std::vector<QVector>& cartan);

/// Checks x -> images[x] is a Lie homomorphism on all basis pairs.
template <class T>
bool is_lie_hom(const LieAlgebra& g, const std::vector<Matrix<T>>& images) {
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const QVector& c = g.sc(i, j);
      Matrix<T> img(images[0].rows(), images[0].cols(), images[0].zero_like());
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(c[k]) != 0) img += images[k] * ScalarOps<T>::from_rat(images[0].zero_like(), c[k]);
      if (!(img == commutator(images[i], images[j]))) return false;
    }
  return true;
}

/// A representation of sl3 as the images of the Chevalley basis.
using Sl3Rep = std::vector<QMatrix>;

/// The symmetric cube of the natural module on the cubic monomials
/// (s^3, t^3, u^3, s^2 t, t^2 u, u^2 s, s t^2, t u^2, u s^2, s t u).
QMatrix sym3_matrix(const QMatrix& x);
Sl3Rep sym3_rep();
/// rep composed with tau.
Sl3Rep compose_tau(const Sl3Rep& rep);
/// Checks the bracket relations of the Chevalley basis.
bool is_sl3_rep(const Sl3Rep& rep);

/// (lambda(h1), lambda(h2)) of the unique highest-weight line of a 10-dim irreducible module.
std::array<Rat, 2> highest_weight(const Sl3Rep& rep);
QVector highest_weight_vector(const Sl3Rep& rep);

/// f with f rep0(k) = rep(k) f for all k, built from words in f1, f2 applied to highest
/// weight vectors. Throws PreconditionError when no such f exists.
QMatrix module_isomorphism(const Sl3Rep& rep0, const Sl3Rep& rep);

}  // namespace sbsplit
