#pragma once

// The split surface S0 in P^9, its 27 quadrics, the Lie algebra L(S) of a surface given by
// quadrics, and the decision/parametrization pipeline.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sbsplit/csa.hpp"

namespace sbsplit {

struct SurfaceQuadrics {
  std::vector<QMatrix> quadrics;  // 27 symmetric 10x10 matrices
};

/// Throws InvalidInput unless there are 27 independent symmetric 10x10 matrices.
void validate_surface(const SurfaceQuadrics& s);

/// Exponents of (s, t, u) in the coordinates s^3, t^3, u^3, s^2t, t^2u, u^2s, st^2, tu^2, us^2, stu.
const std::array<std::array<int, 3>, 10>& s0_monomials();
QVector s0_point(const Rat& s, const Rat& t, const Rat& u);

/// Matrix of x_a x_b (a <= b, 55 rows) -> degree-6 forms in s, t, u (28 columns).
QMatrix s0_evaluation_map();
/// Kernel of the evaluation map as primitive integral symmetric matrices.
SurfaceQuadrics s0_quadrics();
/// Substitutes the monomial parametrization into p^T A p and checks the sextic is zero.
bool vanishes_on_s0(const QMatrix& a);

/// Upper-triangle coordinates (55 for n = 10) of a symmetric matrix.
QVector sym_coords(const QMatrix& a);
QMatrix from_sym_coords(const QVector& c, std::size_t n);

/// Invertible 10x10 matrix with entries drawn uniformly from [-bound, bound], redrawn
/// until invertible.
QMatrix random_twist_matrix(Rng& rng, long bound);

/// Quadrics (M^-1)^T A_i M^-1 of S0, brought to reduced echelon form and made integral.
SurfaceQuadrics twist_surface(const QMatrix& m);

struct LieOfSurface {
  std::vector<QMatrix> basis;       // X with X^T A_i + A_i X in span{A_j}
  LieAlgebra algebra;
  std::vector<QMatrix> witnesses;   // witnesses[k](i, j) = lambda_ij for basis[k]
};

LieOfSurface lie_of_surface(const SurfaceQuadrics& s);

/// Trace-zero basis (8 matrices) when L has dimension 9 and contains the identity.
std::optional<std::vector<QMatrix>> traceless_part(const LieOfSurface& l);

/// Absolute irreducibility of the module spanned by the matrices: their unital closure is
/// all of M_n(Q).
bool is_irreducible_module(const std::vector<QMatrix>& mats);

/// True iff the two lists span the same subspace.
bool same_span(const std::vector<QMatrix>& a, const std::vector<QMatrix>& b);

/// Scales so that the first nonzero entry in row-major order is 1.
QMatrix normalize_projective(QMatrix m);

/// (M^-1)^T A0_i M^-1 in span{A_j} for every quadric of S0, and 50 sampled points
/// M s0_point(s, t, u) lie on every quadric of S.
bool verify_parametrization(const SurfaceQuadrics& s, const QMatrix& m);

/// Rational points of S of small height: x with x x^T of rank one among short vectors
/// (basis vectors and sums of two or three) of the LLL-reduced lattice of integral
/// symmetric matrices orthogonal to every quadric. Distinct, primitive integral.
std::vector<QVector> small_points(const SurfaceQuadrics& s);

/// A split Cartan subalgebra of g = span(basis) centralizing a regular element of the
/// common stabilizer of two points of S. Tries pairs in order.
std::optional<std::vector<QVector>> cartan_from_points(const LieAlgebra& g, const std::vector<QMatrix>& basis,
                                                       const std::vector<QVector>& points, Rng& rng);

struct PipelineOptions {
  long norm_bound = 200;
  /// Look for a split Cartan subalgebra through small rational points before the
  /// Lie-algebra route.
  bool point_search = true;
};

struct PipelineVerdict {
  enum class Status { Split, NonSplit, Invalid, Unknown };
  Status status = Status::Unknown;
  std::optional<QMatrix> matrix;
  std::string stage;   // pipeline stage that produced the verdict
  std::string reason;
  std::size_t lie_dim = 0;
  std::optional<Sl3Decision> lie;
  bool tau_applied = false;
};

std::string to_string(PipelineVerdict::Status s);

PipelineVerdict decide_and_parametrize(const SurfaceQuadrics& s, Rng& rng, const PipelineOptions& opt = {});

}  // namespace sbsplit
