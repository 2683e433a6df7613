#pragma once

// Associative algebras by multiplication table, closures of matrix sets, degree-3
// central simple algebras: zero divisors, cyclic presentations and splitting.

#include <optional>
#include <string>
#include <vector>

#include "sbsplit/liealg.hpp"
#include "sbsplit/normeq.hpp"

namespace sbsplit {

class AssocAlg {
 public:
  AssocAlg() = default;
  /// mt[i][j] = coordinates of e_i e_j.
  AssocAlg(std::size_t dim, std::vector<std::vector<QVector>> mt, QVector unit);

  std::size_t dim() const { return dim_; }
  const QVector& mt(std::size_t i, std::size_t j) const { return mt_[i][j]; }
  const QVector& unit() const { return unit_; }
  QVector basis(std::size_t i) const;
  QVector scalar(const Rat& q) const;

  QVector mul(const QVector& x, const QVector& y) const;
  QVector pow(const QVector& x, unsigned e) const;
  /// Matrix of y -> x y (columns are images of basis vectors).
  QMatrix left_matrix(const QVector& x) const;
  /// Matrix of y -> y x.
  QMatrix right_matrix(const QVector& x) const;
  std::optional<QVector> inverse(const QVector& x) const;
  bool is_scalar(const QVector& x) const;
  /// p(x) for a rational polynomial p.
  QVector eval(const UniPoly& p, const QVector& x) const;

  /// Throws InvalidInput unless the table is associative with the given two-sided unit.
  void validate() const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::vector<QVector>> mt_;
  QVector unit_;
};

/// An abstract algebra together with the matrices realizing its basis.
struct MatrixAlgebra {
  AssocAlg alg;
  std::vector<QMatrix> basis;
};

/// Table of the span of linearly independent matrices closed under multiplication
/// and containing the identity.
MatrixAlgebra algebra_from_matrices(const std::vector<QMatrix>& basis);

/// Smallest unital matrix algebra containing gens; the basis starts with the identity
/// followed by the independent generators in order.
MatrixAlgebra assoc_closure(const std::vector<QMatrix>& gens);

struct CentreInfo {
  std::size_t centre_dim = 0;
  bool semisimple = false;
  bool central_simple = false;
};

/// Centre from x e_i = e_i x; semisimplicity from nondegeneracy of the trace form
/// Tr(L_{xy}) (its radical is the Jacobson radical in characteristic 0).
CentreInfo centre_and_simplicity(const AssocAlg& a);

UniPoly min_poly_element(const AssocAlg& a, const QVector& x);

/// A -> M3(Q) given by the images of the basis, plus the 3-dim left ideal it came from.
struct SplitWitness {
  std::vector<QMatrix> images;
  std::vector<QVector> left_ideal;
};

/// Unital, multiplicative on all basis pairs and bijective.
bool verify_split_witness(const AssocAlg& a, const SplitWitness& w);

/// Left action of A on a 3-dimensional left ideal.
SplitWitness witness_from_left_ideal(const AssocAlg& a, const std::vector<QVector>& ideal);

/// Uses the left ideals Ker(y -> y z) and A z of a zero divisor z; in a degree-3 algebra
/// one of them is 3-dimensional.
SplitWitness zero_divisor_to_split(const AssocAlg& a, const QVector& z);

struct ZeroDivisorFound {
  QVector element;
};

/// First basis vector t with [[t, x], x] != 0.
std::optional<QVector> find_t(const AssocAlg& a, const QVector& x);
/// z = [x, y] with y = c x c^-1, c = [t, x]; throws ZeroDivisorFound when c is singular.
/// Returns nothing when the conclusions z not in Q, z^3 in Q fail to hold.
std::optional<QVector> z_element(const AssocAlg& a, const QVector& x, const QVector& t);

struct CyclicPresentation {
  QVector a, b;
  CubicGaloisData galois;  // field Q[t]/(m_a), with sigma(t) mirroring b a b^-1
  Rat beta;
};

/// Image of an element of E = Q(a) in A.
QVector field_element(const AssocAlg& alg, const CyclicPresentation& p, const NfElem& e);
/// b a = sigma(a) b, b^3 = beta, and {a^i b^j} is a basis.
bool verify_presentation(const AssocAlg& alg, const CyclicPresentation& p);

/// The cyclic algebra on a^i b^j (index i + 3j).
AssocAlg cyclic_table(const CubicGaloisData& e, const Rat& beta);
/// The presentation a = e_1, b = e_3 of a cyclic table.
CyclicPresentation table_presentation(const CubicGaloisData& e, const Rat& beta);

/// Deterministic stream of non-scalar candidates: basis vectors, then e_i + e_j and
/// e_i - e_j, then random vectors with entries in [-B, B], B doubling every 16 draws.
class ElementSampler {
 public:
  ElementSampler(const AssocAlg& a, Rng& rng) : alg_(a), rng_(rng) {}
  QVector next();

 private:
  const AssocAlg& alg_;
  Rng& rng_;
  std::size_t index_ = 0;
  long random_count_ = 0;
};

/// Either a presentation or a zero divisor, starting from a candidate x. Nothing when
/// the candidate leads nowhere (e.g. the auxiliary element has the wrong shape).
/// Without use_chain only x itself is screened: a reducible minimal polynomial gives a
/// zero divisor and a Galois cubic one gives a presentation.
struct PresentationStep {
  std::optional<CyclicPresentation> presentation;
  std::optional<QVector> zero_divisor;
};
PresentationStep presentation_from(const AssocAlg& a, const QVector& x, bool use_chain = true);

/// Left ideal <w, a w, a^2 w> with w = 1 + x b + x sigma(x) b^2 and its witness.
SplitWitness split_from_norm_solution(const AssocAlg& alg, const CyclicPresentation& p, const NfElem& x);

struct CsaResult {
  enum class Status { Split, NonSplit, Unknown };
  Status status = Status::Unknown;
  std::optional<SplitWitness> witness;
  std::optional<CyclicPresentation> presentation;
  std::optional<NormCertificate> certificate;
  std::string route;  // "zero-divisor", "norm-solution", "local-obstruction" or ""
  int presentations_tried = 0;
  long norm_bound = 0;
};

std::string to_string(CsaResult::Status s);

/// Decides a presentation through the norm equation.
CsaResult decide_cyclic(const AssocAlg& alg, const CyclicPresentation& p, long norm_bound);

struct SplitOptions {
  long norm_bound = 200;
  int max_presentations = 4;
  int max_samples = 400;
};

/// Decides whether a degree-3 central simple algebra is M3(Q). The sparse candidates are
/// screened directly; the commutator construction is used only on later samples when no
/// presentation has turned up. Presentations are ordered by bit size and checked for local
/// obstructions, then searched in rounds of height min(4 * 2^r, norm_bound).
CsaResult split_csa(const AssocAlg& alg, Rng& rng, const SplitOptions& opt = {});

/// Trace-zero Lie algebra [A, A], realized through the left regular representation.
LieAlgebra commutator_algebra(const AssocAlg& a);

/// Outcome of deciding whether an 8-dimensional Lie algebra is isomorphic to sl3(Q).
struct Sl3Decision {
  enum class Status { Split, NonSplit, Unknown };
  Status status = Status::Unknown;
  std::vector<QMatrix> images;  // g -> sl3(Q) on the basis of g, when split
  std::string route;            // "split-cartan" or "csa"
  std::string reason;           // "not-simple" or "assoc-dim" for NonSplit without a certificate
  int field_degree = 1;
  std::size_t assoc_dim = 0;
  std::optional<CsaResult> csa;
};

std::string to_string(Sl3Decision::Status s);

/// Split Cartan: Chevalley basis directly. Otherwise rho' over the splitting field F of a
/// Cartan subalgebra, restricted to Q; A = <rho(g)> has dimension 9 exactly when g is a form
/// of sl3, and then g = sl3(Q) iff A = M3(Q). The witness turns rho into g -> sl3(Q).
Sl3Decision recognize_sl3(const LieAlgebra& g, Rng& rng, const SplitOptions& opt = {});

/// rho(x) = phi^-1 rho'(x) phi on F^3 viewed over Q, basis theta^k w_j at index j n + k.
std::vector<QMatrix> restricted_rep(const SplitIso& iso);

}  // namespace sbsplit
