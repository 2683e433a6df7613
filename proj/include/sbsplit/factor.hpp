#pragma once

// Factorization of rational univariate polynomials: square-free decomposition,
// modular factorization, Hensel lifting and factor recombination.

#include <cstdint>
#include <utility>
#include <vector>

#include "sbsplit/poly.hpp"

namespace sbsplit {

using Factorization = std::vector<std::pair<UniPoly, int>>;

/// Monic irreducible factors with multiplicities; their product times lc(p) is p.
Factorization factor_over_q(const UniPoly& p);

/// Rational roots with multiplicity, ascending.
std::vector<Rat> rational_roots(const UniPoly& p);

/// Square-free decomposition: p = lc · prod a_i^i with a_i monic, square-free, coprime.
Factorization squarefree_decomposition(const UniPoly& p);

/// Primitive integer polynomial with positive leading coefficient, a rational multiple of p.
std::vector<Int> primitive_integer(const UniPoly& p);

UniPoly from_integer(const std::vector<Int>& c);

bool is_irreducible_over_q(const UniPoly& p);

namespace modp {

/// Polynomials over F_p, p < 2^31, lowest degree first, no trailing zeros.
using Vec = std::vector<std::uint64_t>;

Vec reduce(const std::vector<Int>& f, std::uint64_t p);
/// Monic irreducible factors of a square-free monic polynomial.
std::vector<Vec> factor_squarefree(const Vec& f, std::uint64_t p);
/// Degrees of the irreducible factors (with multiplicity) of any nonzero polynomial.
std::vector<int> factor_degrees(const Vec& f, std::uint64_t p);
bool is_squarefree(const Vec& f, std::uint64_t p);

}  // namespace modp

}  // namespace sbsplit
