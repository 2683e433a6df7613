#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace sbsplit {

/// Exact rational scalar. GMP keeps num/den coprime with den > 0 after canonicalize().
using Rat = mpq_class;
using Int = mpz_class;

/// Raised for malformed user-facing input (JSON, CLI arguments, preconditions on data).
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a mathematical precondition of an operation is violated.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

/// "p/q", or "p" when q = 1; the sign sits on the numerator.
inline std::string to_string(const Rat& x) { return x.get_str(10); }

inline Rat parse_rat(std::string_view s) {
  std::string str(s);
  auto slash = str.find('/');
  Rat r;
  try {
    if (slash == std::string::npos) {
      r = Rat(Int(str, 10));
    } else {
      Int num(str.substr(0, slash), 10);
      Int den(str.substr(slash + 1), 10);
      if (den == 0) throw InvalidInput("zero denominator in rational '" + str + "'");
      r = Rat(num, den);
    }
  } catch (const std::invalid_argument&) {
    throw InvalidInput("malformed rational '" + str + "'");
  }
  r.canonicalize();
  return r;
}

inline Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Exact cube root of a rational, if it is a cube.
inline bool rational_cube_root(const Rat& x, Rat& root) {
  Int n = x.get_num(), d = x.get_den();
  Int rn, rd;
  if (mpz_root(rn.get_mpz_t(), n.get_mpz_t(), 3) == 0) return false;
  if (mpz_root(rd.get_mpz_t(), d.get_mpz_t(), 3) == 0) return false;
  root = Rat(rn, rd);
  root.canonicalize();
  return true;
}

/// q-adic valuation of a nonzero rational.
inline long valuation(const Rat& x, unsigned long q) {
  long v = 0;
  Int n = abs(x.get_num()), d = x.get_den();
  while (n != 0 && mpz_divisible_ui_p(n.get_mpz_t(), q)) {
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
    ++v;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), q)) {
    mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), q);
    --v;
  }
  return v;
}

}  // namespace sbsplit
