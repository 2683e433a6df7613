#include "sbsplit/normeq.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>

namespace sbsplit {

namespace {

constexpr unsigned long kTrialLimit = 1000000;
constexpr unsigned long kMaxPrime = (1UL << 31) - 1;

// D with D*a integral: the lcm of the coefficient denominators of the monic cubic m.
Int integral_scale(const UniPoly& m) {
  Int d = 1;
  for (int i = 0; i < 3; ++i) d = lcm(d, m.coeff(i).get_den());
  return d;
}

std::vector<Int> integer_coeffs(const UniPoly& p) {
  std::vector<Int> c;
  for (const auto& x : p.coeffs()) {
    if (x.get_den() != 1) throw PreconditionError("expected an integral polynomial");
    c.push_back(x.get_num());
  }
  return c;
}

void add_prime_factors(Int n, std::vector<unsigned long>& out) {
  n = abs(n);
  if (n <= 1) return;
  for (unsigned long q = 2; q <= kTrialLimit && q * q <= n; ++q) {
    if (!mpz_divisible_ui_p(n.get_mpz_t(), q)) continue;
    out.push_back(q);
    while (mpz_divisible_ui_p(n.get_mpz_t(), q)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
  }
  if (n > 1 && n <= kMaxPrime && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) out.push_back(n.get_ui());
}

bool irreducible_mod(const std::vector<Int>& f, unsigned long q) {
  auto red = modp::reduce(f, q);
  if (red.size() != f.size()) return false;
  auto deg = modp::factor_degrees(red, q);
  return deg.size() == 1 && deg[0] == static_cast<int>(f.size()) - 1;
}

bool eisenstein_at(const std::vector<Int>& f, unsigned long q) {
  const std::size_t n = f.size() - 1;
  if (f[n] != 1) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (!mpz_divisible_ui_p(f[i].get_mpz_t(), q)) return false;
  Int q2 = Int(q) * q;
  return !mpz_divisible_p(f[0].get_mpz_t(), q2.get_mpz_t());
}

// Small integral elements of E, ordered by height of the (theta, theta^2) part, then
// by the rational shift 0, 1, -1, 2, -2, ...
template <class Accept>
std::optional<UniPoly> find_witness(const CubicGaloisData& g, long shift_range, Accept accept) {
  const FieldPtr& k = g.field;
  NfElem theta = k->generator() * Rat(integral_scale(k->modulus()));
  NfElem theta2 = theta * theta;
  for (long h = 1; h <= 3; ++h)
    for (long c1 = -h; c1 <= h; ++c1)
      for (long c2 = -h; c2 <= h; ++c2) {
        if (std::max(std::labs(c1), std::labs(c2)) != h) continue;
        NfElem base = theta * Rat(c1) + theta2 * Rat(c2);
        for (long s = 0; s <= 2 * shift_range; ++s) {
          long c0 = (s % 2 == 0) ? -(s / 2) : (s + 1) / 2;
          NfElem e = base + k->from_rat(Rat(c0));
          UniPoly mp = e.min_poly();
          if (mp.degree() != 3) continue;
          if (accept(integer_coeffs(mp))) return mp;
        }
      }
  return std::nullopt;
}

Int residue_mod(const Rat& u, unsigned long q) {
  Int qq = q, den = u.get_den(), inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), qq.get_mpz_t());
  Int r = (u.get_num() * inv) % qq;
  if (r < 0) r += qq;
  return r;
}

bool is_cube_residue(const Int& r, unsigned long q) {
  if (q % 3 != 1) return true;
  Int e = (q - 1) / 3, out, qq = q;
  mpz_powm(out.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), qq.get_mpz_t());
  return out == 1;
}

// Unit-part residue test at a tamely ramified prime, given the Eisenstein polynomial of
// a uniformizer. True when 1/beta is not a local norm.
bool ramified_obstructs(const Rat& beta, const std::vector<Int>& eis, unsigned long q, long& v) {
  Rat t = 1 / beta;
  v = valuation(t, q);
  Rat n_pi = Rat(-eis[0]);
  Rat u = t;
  Rat npv = 1;
  for (long i = 0; i < std::labs(v); ++i) npv *= n_pi;
  if (v > 0) u /= npv;
  if (v < 0) u *= npv;
  return !is_cube_residue(residue_mod(u, q), q);
}

// Cubic form N(c0 + c1 a + c2 a^2) = sum coef[i] mono_i(c) / denom.
struct NormForm {
  std::array<Int, 10> coef;
  Int denom;
};

std::array<Rat, 10> monomials(const Rat& x, const Rat& y, const Rat& z) {
  return {x * x * x, x * x * y, x * x * z, x * y * y, x * y * z, x * z * z, y * y * y, y * y * z, y * z * z, z * z * z};
}

NormForm norm_form(const FieldPtr& k) {
  QMatrix sys(10, 10);
  QVector rhs(10);
  NfElem a = k->generator(), a2 = a * a;
  std::size_t row = 0;
  for (long i = 0; i <= 3; ++i)
    for (long j = 0; i + j <= 3; ++j) {
      long l = 3 - i - j;
      auto mono = monomials(Rat(i), Rat(j), Rat(l));
      for (std::size_t c = 0; c < 10; ++c) sys(row, c) = mono[c];
      rhs[row] = (k->from_rat(Rat(i)) + a * Rat(j) + a2 * Rat(l)).norm();
      ++row;
    }
  auto sol = solve(sys, rhs);
  NormForm f;
  f.denom = 1;
  for (const auto& c : *sol) f.denom = lcm(f.denom, c.get_den());
  for (std::size_t c = 0; c < 10; ++c) {
    Rat s = (*sol)[c] * f.denom;
    f.coef[c] = s.get_num();
  }
  return f;
}

// Residue filter: a product must be a cube modulo 7, 9, 13, 19 and 37.
struct CubeFilter {
  static constexpr std::array<long, 5> mods{7, 9, 13, 19, 37};
  std::array<std::vector<bool>, 5> is_cube;
  std::array<long, 5> k_mod;
  std::array<std::array<long, 10>, 5> coef_mod;

  CubeFilter(const NormForm& f, const Int& k) {
    for (std::size_t i = 0; i < mods.size(); ++i) {
      long m = mods[i];
      is_cube[i].assign(m, false);
      for (long x = 0; x < m; ++x) is_cube[i][(x * x % m) * x % m] = true;
      Int km = k % m;
      if (km < 0) km += m;
      k_mod[i] = km.get_si();
      for (std::size_t c = 0; c < 10; ++c) {
        Int cm = f.coef[c] % m;
        if (cm < 0) cm += m;
        coef_mod[i][c] = cm.get_si();
      }
    }
  }

  bool pass(long c0, long c1, long c2) const {
    for (std::size_t i = 0; i < mods.size(); ++i) {
      long m = mods[i];
      long x = ((c0 % m) + m) % m, y = ((c1 % m) + m) % m, z = ((c2 % m) + m) % m;
      long mono[10] = {x * x % m * x, x * x % m * y, x * x % m * z, x * y % m * y, x * y % m * z,
                       x * z % m * z, y * y % m * y, y * y % m * z, y * z % m * z, z * z % m * z};
      long s = 0;
      for (std::size_t c = 0; c < 10; ++c) s = (s + coef_mod[i][c] * (mono[c] % m)) % m;
      if (!is_cube[i][s * k_mod[i] % m]) return false;
    }
    return true;
  }
};

Int eval_form(const NormForm& f, long c0, long c1, long c2) {
  auto mono = monomials(Rat(c0), Rat(c1), Rat(c2));
  Int s = 0;
  for (std::size_t c = 0; c < 10; ++c)
    if (f.coef[c] != 0) s += f.coef[c] * mono[c].get_num();
  return s;
}

struct Hit {
  long c0, c1, c2;
  Int root;
};

// First (c1, c2) in lexicographic order with max(|c0|,|c1|,|c2|) = h passing the cube test.
std::optional<Hit> scan_c0(const NormForm& f, const CubeFilter& filter, const Int& k, long h, long c0) {
  auto test = [&](long c1, long c2) -> std::optional<Hit> {
    if (!filter.pass(c0, c1, c2)) return std::nullopt;
    Int w = k * eval_form(f, c0, c1, c2);
    if (w == 0) return std::nullopt;
    Int r;
    if (mpz_root(r.get_mpz_t(), w.get_mpz_t(), 3) == 0) return std::nullopt;
    return Hit{c0, c1, c2, r};
  };
  const bool full = std::labs(c0) == h;
  for (long c1 = -h; c1 <= h; ++c1) {
    if (full || std::labs(c1) == h) {
      for (long c2 = -h; c2 <= h; ++c2)
        if (auto hit = test(c1, c2)) return hit;
    } else {
      if (auto hit = test(c1, -h)) return hit;
      if (auto hit = test(c1, h)) return hit;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(NormResult::Status s) {
  switch (s) {
    case NormResult::Status::Solution:
      return "solution";
    case NormResult::Status::NoSolution:
      return "no-solution";
    case NormResult::Status::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::vector<unsigned long> bad_primes(const NormProblem& p) {
  if (sgn(p.beta) == 0) throw PreconditionError("beta must be nonzero");
  const UniPoly& m = p.galois.field->modulus();
  Int d = integral_scale(m);
  // Discriminant of the integral model D^3 m(x / D) is D^6 disc(m).
  Rat disc = cubic_discriminant(m) * Rat(d * d * d * d * d * d);
  std::vector<unsigned long> out;
  add_prime_factors(p.beta.get_num(), out);
  add_prime_factors(p.beta.get_den(), out);
  add_prime_factors(d, out);
  add_prime_factors(disc.get_num(), out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<NormCertificate> local_obstruction(const NormProblem& p) {
  for (unsigned long q : bad_primes(p)) {
    long v = valuation(p.beta, q);
    auto inert = find_witness(p.galois, 0, [&](const std::vector<Int>& f) { return irreducible_mod(f, q); });
    if (inert) {
      if (v % 3 != 0) return NormCertificate{q, "inert", *inert, -v};
      continue;
    }
    // Tame ramification only; 3 is never certified through the ramified test.
    if (q % 3 != 1) continue;
    auto eis = find_witness(p.galois, static_cast<long>(std::min<unsigned long>(q, 50)),
                            [&](const std::vector<Int>& f) { return eisenstein_at(f, q); });
    if (!eis) continue;
    long tv = 0;
    if (ramified_obstructs(p.beta, integer_coeffs(*eis), q, tv)) return NormCertificate{q, "ramified", *eis, tv};
  }
  return std::nullopt;
}

bool check_certificate(const NormProblem& p, const NormCertificate& c) {
  if (c.prime < 2 || c.prime > kMaxPrime) return false;
  if (mpz_probab_prime_p(Int(c.prime).get_mpz_t(), 40) == 0) return false;
  if (c.witness.degree() != 3 || !c.witness.is_monic()) return false;
  for (const auto& x : c.witness.coeffs())
    if (x.get_den() != 1) return false;
  // The witness must be the minimal polynomial of an element of E.
  if (nf_roots(c.witness, p.galois.field).empty()) return false;
  auto f = integer_coeffs(c.witness);
  long v = valuation(1 / p.beta, c.prime);
  if (v != c.valuation) return false;
  if (c.kind == "inert") return irreducible_mod(f, c.prime) && v % 3 != 0;
  if (c.kind == "ramified") {
    if (c.prime % 3 != 1 || !eisenstein_at(f, c.prime)) return false;
    long tv = 0;
    return ramified_obstructs(p.beta, f, c.prime, tv);
  }
  return false;
}

NormResult solve_norm(const NormProblem& p, long height_bound) {
  if (sgn(p.beta) == 0) throw PreconditionError("beta must be nonzero");
  NormResult res;
  res.search_bound = height_bound;
  if (auto cert = local_obstruction(p)) {
    res.status = NormResult::Status::NoSolution;
    res.certificate = std::move(cert);
    return res;
  }
  const FieldPtr& k = p.galois.field;
  NormForm f = norm_form(k);
  // beta N(c) = bn f(c) / (bd L) is a cube iff bn (bd L)^2 f(c) is an integer cube.
  Int scale = p.beta.get_den() * f.denom;
  Int kk = p.beta.get_num() * scale * scale;
  CubeFilter filter(f, kk);
  NfElem a = k->generator(), a2 = a * a;

  for (long h = 1; h <= height_bound; ++h) {
    const long width = 2 * h + 1;
    std::vector<std::optional<Hit>> hits(width);
    std::atomic<long> first(width);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < width; ++i) {
      if (i > first.load()) continue;
      hits[i] = scan_c0(f, filter, kk, h, i - h);
      if (hits[i]) {
        long cur = first.load();
        while (i < cur && !first.compare_exchange_weak(cur, i)) {
        }
      }
    }
    if (first.load() == width) continue;
    const Hit& hit = *hits[first.load()];
    NfElem c = k->from_rat(Rat(hit.c0)) + a * Rat(hit.c1) + a2 * Rat(hit.c2);
    Rat r(hit.root, scale);
    r.canonicalize();
    NfElem x = c * (1 / r);
    if (nf_norm(x, p.galois) * p.beta != 1) throw PreconditionError("norm search produced an invalid solution");
    res.status = NormResult::Status::Solution;
    res.solution = x;
    return res;
  }
  return res;
}

}  // namespace sbsplit
