#include "sbsplit/factor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "sbsplit/rng.hpp"

namespace sbsplit {

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x]

namespace modp {

namespace {

using u64 = std::uint64_t;

void trim(Vec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

u64 inv(u64 a, u64 p) { return powm(a, p - 2, p); }

Vec sub(const Vec& a, const Vec& b, u64 p) {
  Vec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

Vec add(const Vec& a, const Vec& b, u64 p) {
  Vec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

Vec mul(const Vec& a, const Vec& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

Vec scale(const Vec& a, u64 s, u64 p) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s % p;
  trim(r);
  return r;
}

void divmod(const Vec& a, const Vec& d, u64 p, Vec& q, Vec& r) {
  r = a;
  if (a.size() < d.size()) {
    q.clear();
    return;
  }
  q.assign(a.size() - d.size() + 1, 0);
  u64 li = inv(d.back(), p);
  const std::size_t dd = d.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    u64 f = r[k + dd] * li % p;
    q[k] = f;
    if (!f) continue;
    for (std::size_t j = 0; j <= dd; ++j) r[k + j] = (r[k + j] + p - f * d[j] % p) % p;
  }
  r.resize(dd);
  trim(r);
  trim(q);
}

Vec rem(const Vec& a, const Vec& d, u64 p) {
  Vec q, r;
  divmod(a, d, p, q, r);
  return r;
}

Vec quo(const Vec& a, const Vec& d, u64 p) {
  Vec q, r;
  divmod(a, d, p, q, r);
  return q;
}

Vec monic(const Vec& a, u64 p) { return a.empty() ? a : scale(a, inv(a.back(), p), p); }

Vec gcd(Vec a, Vec b, u64 p) {
  while (!b.empty()) {
    Vec r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

/// s a + t b = gcd (monic).
Vec xgcd(const Vec& a, const Vec& b, u64 p, Vec& s, Vec& t) {
  Vec r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
  while (!r1.empty()) {
    Vec q, r;
    divmod(r0, r1, p, q, r);
    r0 = std::move(r1);
    r1 = std::move(r);
    Vec s2 = sub(s0, mul(q, s1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    Vec t2 = sub(t0, mul(q, t1, p), p);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  u64 li = inv(r0.back(), p);
  s = scale(s0, li, p);
  t = scale(t0, li, p);
  return scale(r0, li, p);
}

Vec derivative(const Vec& a, u64 p) {
  Vec r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * (i % p) % p);
  trim(r);
  return r;
}

/// base^e mod f
Vec powmod(const Vec& base, const Int& e, const Vec& f, u64 p) {
  Vec r{1}, b = rem(base, f, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = rem(mul(r, r, p), f, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, b, p), f, p);
  }
  return r;
}

/// Distinct-degree factorization of a monic square-free polynomial.
std::vector<std::pair<Vec, int>> ddf(Vec f, u64 p) {
  std::vector<std::pair<Vec, int>> out;
  const Vec x{0, 1};
  Vec h = x;
  int i = 0;
  while (static_cast<int>(f.size()) - 1 >= 2 * (i + 1)) {
    ++i;
    h = powmod(h, Int(static_cast<unsigned long>(p)), f, p);
    Vec g = gcd(sub(h, x, p), f, p);
    if (g.size() > 1) {
      out.emplace_back(g, i);
      f = quo(f, g, p);
      h = rem(h, f, p);
    }
  }
  if (f.size() > 1) out.emplace_back(f, static_cast<int>(f.size()) - 1);
  return out;
}

/// Equal-degree splitting (Cantor-Zassenhaus), p odd.
void edf(const Vec& g, int d, u64 p, Rng& rng, std::vector<Vec>& out) {
  const int n = static_cast<int>(g.size()) - 1;
  if (n == d) {
    out.push_back(g);
    return;
  }
  Int pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), p, static_cast<unsigned long>(d));
  Int e = (pd - 1) / 2;
  while (true) {
    Vec a(n);
    for (auto& c : a) c = static_cast<u64>(rng.uniform(0, static_cast<long>(p) - 1));
    trim(a);
    if (a.size() < 2) continue;
    Vec h = gcd(a, g, p);
    if (h.size() == 1) {
      Vec b = sub(powmod(a, e, g, p), Vec{1}, p);
      h = gcd(b, g, p);
    }
    if (h.size() > 1 && h.size() < g.size()) {
      edf(h, d, p, rng, out);
      edf(quo(g, h, p), d, p, rng, out);
      return;
    }
  }
}

}  // namespace

Vec reduce(const std::vector<Int>& f, u64 p) {
  Vec r(f.size());
  Int t;
  for (std::size_t i = 0; i < f.size(); ++i) {
    mpz_fdiv_r_ui(t.get_mpz_t(), f[i].get_mpz_t(), p);
    r[i] = t.get_ui();
  }
  trim(r);
  return r;
}

bool is_squarefree(const Vec& f, u64 p) {
  if (f.size() <= 2) return !f.empty();
  Vec d = derivative(f, p);
  if (d.empty()) return false;
  return gcd(f, d, p).size() == 1;
}

std::vector<Vec> factor_squarefree(const Vec& f, u64 p) {
  Vec g = monic(f, p);
  std::vector<Vec> out;
  Rng rng(p * 1000003ULL + g.size());
  for (auto& [part, d] : ddf(g, p)) edf(part, d, p, rng, out);
  std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

std::vector<int> factor_degrees(const Vec& f, u64 p) {
  // Square-free factorization in characteristic p, then distinct-degree splitting.
  std::vector<int> degs;
  std::function<void(Vec, int)> rec = [&](Vec a, int mult) {
    a = monic(a, p);
    if (a.size() <= 1) return;
    Vec d = derivative(a, p);
    if (d.empty()) {
      // a = b(x^p)
      Vec b;
      for (std::size_t i = 0; i < a.size(); i += p) b.push_back(a[i]);
      rec(b, mult * static_cast<int>(p));
      return;
    }
    Vec g = gcd(a, d, p);
    Vec sf = quo(a, g, p);  // product of distinct irreducible factors of a
    for (auto& [part, deg] : ddf(sf, p))
      for (int k = 0; k < (static_cast<int>(part.size()) - 1) / deg; ++k)
        for (int m = 0; m < mult; ++m) degs.push_back(deg);
    // Remaining multiplicities live in g.
    if (g.size() > 1) rec(g, mult);
  };
  rec(f, 1);
  std::sort(degs.begin(), degs.end());
  return degs;
}

}  // namespace modp

// ---------------------------------------------------------------------------
// Integer polynomial helpers

namespace {

using IPoly = std::vector<Int>;

void trim(IPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

IPoly imul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

Int content(const IPoly& f) {
  Int g = 0;
  for (const auto& c : f) g = gcd(g, c);
  return g;
}

IPoly primitive_part(IPoly f) {
  Int c = content(f);
  if (c == 0) return f;
  if (f.back() < 0) c = -c;
  for (auto& a : f) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  return f;
}

/// Symmetric residue in (-m/2, m/2].
Int symmetric(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

IPoly to_ipoly(const modp::Vec& v) {
  IPoly r;
  for (auto c : v) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

IPoly mod_all(IPoly f, const Int& m) {
  for (auto& c : f) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(f);
  return f;
}

/// Lifts f = g0 h0 (mod p), g0 monic, lc(h0) = lc(f) (mod p), to f = g h (mod p^k).
void hensel_pair(const IPoly& f, const modp::Vec& g0, const modp::Vec& h0, std::uint64_t p, unsigned k, IPoly& g,
                 IPoly& h) {
  modp::Vec s, t;
  modp::Vec one = modp::xgcd(g0, h0, p, s, t);
  if (one.size() != 1) throw PreconditionError("hensel: factors not coprime mod p");
  g = to_ipoly(g0);
  h = to_ipoly(h0);
  Int pj = static_cast<unsigned long>(p);
  for (unsigned j = 1; j < k; ++j) {
    IPoly diff = f;
    IPoly gh = imul(g, h);
    diff.resize(std::max(diff.size(), gh.size()));
    for (std::size_t i = 0; i < gh.size(); ++i) diff[i] -= gh[i];
    for (auto& c : diff) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
    trim(diff);
    modp::Vec e = modp::reduce(diff, p);
    if (!e.empty()) {
      modp::Vec et = modp::mul(e, t, p);
      modp::Vec q, dg;
      modp::divmod(et, g0, p, q, dg);
      modp::Vec dh = modp::add(modp::mul(e, s, p), modp::mul(q, h0, p), p);
      IPoly dgi = to_ipoly(dg), dhi = to_ipoly(dh);
      if (g.size() < dgi.size()) g.resize(dgi.size());
      if (h.size() < dhi.size()) h.resize(dhi.size());
      for (std::size_t i = 0; i < dgi.size(); ++i) g[i] += pj * dgi[i];
      for (std::size_t i = 0; i < dhi.size(); ++i) h[i] += pj * dhi[i];
    }
    pj *= static_cast<unsigned long>(p);
  }
  g = mod_all(g, pj);
  h = mod_all(h, pj);
}

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t n = 3; n < limit; n += 2) {
    bool prime = true;
    for (auto q : ps) {
      if (q * q > n) break;
      if (n % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) ps.push_back(n);
  }
  return ps;
}

/// Irreducible factors of a square-free primitive f with positive leading coefficient.
std::vector<IPoly> zassenhaus(const IPoly& f) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {f};
  if (f[0] == 0) {
    auto rest = zassenhaus(IPoly(f.begin() + 1, f.end()));
    rest.insert(rest.begin(), IPoly{Int(0), Int(1)});
    return rest;
  }

  // Prime with the fewest modular factors among the first few admissible ones.
  static const auto primes = small_primes(20000);
  std::uint64_t best_p = 0;
  std::size_t best_count = SIZE_MAX;
  int tried = 0;
  for (auto p : primes) {
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), p)) continue;
    modp::Vec fp = modp::reduce(f, p);
    if (!modp::is_squarefree(fp, p)) continue;
    auto degs = modp::factor_degrees(fp, p);
    if (degs.size() < best_count) {
      best_count = degs.size();
      best_p = p;
    }
    if (best_count == 1 || ++tried >= 8) break;
  }
  if (best_p == 0) throw PreconditionError("no admissible prime for factorization");
  if (best_count == 1) return {f};
  const std::uint64_t p = best_p;

  // Coefficient bound for lc(f) times any factor.
  const Int b = f.back();
  Int norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Int root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  root += 1;
  Int bound = 2 * abs(b) * root;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
  unsigned k = 1;
  Int pk = static_cast<unsigned long>(p);
  while (pk <= 2 * bound) {
    pk *= static_cast<unsigned long>(p);
    ++k;
  }

  // Lift the modular factorization one factor at a time.
  std::vector<modp::Vec> u = modp::factor_squarefree(modp::reduce(f, p), p);
  std::vector<IPoly> lifted;
  IPoly rest = f;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    modp::Vec h0 = modp::reduce(IPoly{b}, p);
    for (std::size_t j = i + 1; j < u.size(); ++j) h0 = modp::mul(h0, u[j], p);
    IPoly g, h;
    hensel_pair(rest, u[i], h0, p, k, g, h);
    lifted.push_back(g);
    rest = h;
  }
  {
    // Last factor: rest = b * u_r (mod p^k); make it monic.
    Int binv;
    mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), pk.get_mpz_t());
    for (auto& c : rest) c *= binv;
    lifted.push_back(mod_all(rest, pk));
  }

  // Recombination over subsets of increasing size.
  std::vector<IPoly> factors;
  IPoly cur = f;
  std::vector<IPoly> pool = lifted;
  std::size_t s = 1;
  while (2 * s <= pool.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    const Int bc = cur.back();
    while (true) {
      IPoly gs{bc}, hs{bc};
      std::vector<bool> in(pool.size(), false);
      for (auto i : idx) in[i] = true;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (in[i])
          gs = mod_all(imul(gs, pool[i]), pk);
        else
          hs = mod_all(imul(hs, pool[i]), pk);
      }
      for (auto& c : gs) c = symmetric(c, pk);
      for (auto& c : hs) c = symmetric(c, pk);
      trim(gs);
      trim(hs);
      bool ok = !gs.empty() && !hs.empty() && gs[0] != 0 && hs[0] != 0;
      if (ok) {
        Int t0 = bc * cur[0];
        ok = mpz_divisible_p(t0.get_mpz_t(), gs[0].get_mpz_t()) != 0;
      }
      if (ok) {
        IPoly prod = imul(gs, hs);
        IPoly target = cur;
        for (auto& c : target) c *= bc;
        ok = prod == target;
      }
      if (ok) {
        factors.push_back(primitive_part(gs));
        cur = primitive_part(hs);
        std::vector<IPoly> next;
        for (std::size_t i = 0; i < pool.size(); ++i)
          if (!in[i]) next.push_back(pool[i]);
        pool = std::move(next);
        found = true;
        break;
      }
      // Next combination in lexicographic order.
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == pool.size() - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  factors.push_back(primitive_part(cur));
  return factors;
}

UniPoly monic_from_integer(const IPoly& f) { return from_integer(f).monic(); }

bool poly_less(const UniPoly& a, const UniPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  return false;
}

}  // namespace

std::vector<Int> primitive_integer(const UniPoly& p) {
  Int den = 1;
  for (const auto& c : p.coeffs()) den = lcm(den, c.get_den());
  IPoly f;
  for (const auto& c : p.coeffs()) f.push_back(c.get_num() * (den / c.get_den()));
  return primitive_part(f);
}

UniPoly from_integer(const std::vector<Int>& c) {
  std::vector<Rat> r;
  for (const auto& a : c) r.emplace_back(a);
  return UniPoly(std::move(r), Rat(0));
}

Factorization squarefree_decomposition(const UniPoly& p) { return squarefree_parts(p); }

Factorization factor_over_q(const UniPoly& p) {
  if (p.is_zero()) throw PreconditionError("factorization of zero polynomial");
  Factorization out;
  for (const auto& [part, mult] : squarefree_decomposition(p)) {
    for (const auto& g : zassenhaus(primitive_integer(part))) out.emplace_back(monic_from_integer(g), mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (poly_less(x.first, y.first)) return true;
    if (poly_less(y.first, x.first)) return false;
    return x.second < y.second;
  });
  return out;
}

std::vector<Rat> rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw PreconditionError("roots of zero polynomial");
  std::vector<Rat> roots;
  for (const auto& [g, mult] : factor_over_q(p))
    if (g.degree() == 1)
      for (int k = 0; k < mult; ++k) roots.push_back(-g.coeff(0));
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool is_irreducible_over_q(const UniPoly& p) {
  if (p.degree() < 1) return false;
  auto f = factor_over_q(p);
  return f.size() == 1 && f[0].second == 1;
}

std::string to_string(const UniPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int i = p.degree(); i >= 0; --i) {
    Rat c = p.coeff(i);
    if (sgn(c) == 0) continue;
    bool neg = sgn(c) < 0;
    Rat a = abs(c);
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    bool unit = a == 1;
    if (!unit || i == 0) s += a.get_str();
    if (i > 0) {
      if (!unit) s += "*";
      s += "x";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace sbsplit
