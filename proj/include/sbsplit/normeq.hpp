#pragma once

// The cubic norm equation x sigma(x) sigma^2(x) = 1/beta over a cyclic cubic field:
// local obstructions with re-checkable certificates, and a bounded exact search.

#include <optional>
#include <string>
#include <vector>

#include "sbsplit/numfield.hpp"

namespace sbsplit {

struct NormProblem {
  CubicGaloisData galois;
  Rat beta;
};

/// Why 1/beta is not a local norm at `prime`.
///  - kind "inert": `witness` is the monic integral minimal polynomial of an element of E,
///    irreducible mod prime (so prime is inert), and 3 does not divide v_prime(beta).
///  - kind "ramified": `witness` is Eisenstein at prime (a uniformizer's minimal polynomial),
///    prime = 1 mod 3, and the unit part of (1/beta) / N(uniformizer)^v has a non-cube residue.
struct NormCertificate {
  unsigned long prime = 0;
  std::string kind;
  UniPoly witness;
  long valuation = 0;  // v_prime(1/beta)
};

struct NormResult {
  enum class Status { Solution, NoSolution, Unknown };
  Status status = Status::Unknown;
  std::optional<NfElem> solution;
  std::optional<NormCertificate> certificate;
  long search_bound = 0;
};

std::string to_string(NormResult::Status s);

/// Primes that can obstruct: divisors of num(beta), den(beta), the discriminant and the
/// denominator of the field polynomial. Cofactors that resist trial division are kept
/// only when they pass a strong probable-prime test.
std::vector<unsigned long> bad_primes(const NormProblem& p);

std::optional<NormCertificate> local_obstruction(const NormProblem& p);

/// Re-derives a certificate from scratch.
bool check_certificate(const NormProblem& p, const NormCertificate& c);

/// Candidates x = c / r with c = c0 + c1 a + c2 a^2 integral, enumerated by increasing
/// max |c_i| and lexicographically within a height; r is the cube root of beta N(c)
/// when it is rational. The first verified candidate is returned.
NormResult solve_norm(const NormProblem& p, long height_bound = 200);

}  // namespace sbsplit
