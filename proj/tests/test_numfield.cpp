#include "doctest.h"

#include "sbsplit/numfield.hpp"
#include "sbsplit/rng.hpp"

using namespace sbsplit;

namespace {

const UniPoly kE7 = make_poly({-1, -2, 1, 1});  // x^3 + x^2 - 2x - 1
const UniPoly kE9 = make_poly({1, -3, 0, 1});   // x^3 - 3x + 1

NfElem random_elem(Rng& rng, const FieldPtr& k, long bound) {
  std::vector<Rat> c;
  for (int i = 0; i < k->degree(); ++i) {
    c.emplace_back(rng.uniform(-bound, bound), rng.uniform(1, 3));
    c.back().canonicalize();
  }
  return NfElem(k, c);
}

// Resultant oracle by the Sylvester determinant.
Rat resultant(const UniPoly& f, const UniPoly& g) {
  const int m = f.degree(), n = g.degree();
  QMatrix s(m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s(i, i + j) = f.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s(n + i, i + j) = g.coeff(n - j);
  return determinant(s);
}

NfPoly product(const NfFactorization& f, const FieldPtr& k) {
  NfPoly p = NfPoly::constant(k->one());
  for (const auto& [g, e] : f)
    for (int i = 0; i < e; ++i) p *= g;
  return p;
}

}  // namespace

TEST_SUITE("numfield") {
  TEST_CASE("field arithmetic and minimal polynomials") {
    auto k = NumberField::create(kE7);
    NfElem a = k->generator();
    CHECK(a * a.inverse() == k->one());
    CHECK(a.min_poly() == kE7);
    NfElem b = a * a - k->from_rat(2);
    CHECK(b.min_poly() == kE7);
    CHECK_THROWS_AS(k->zero().inverse(), PreconditionError);
    CHECK_THROWS_AS(NumberField::create(make_poly({-1, 0, 1})), PreconditionError);

    Rng rng(1);
    for (int i = 0; i < 10; ++i) {
      NfElem x = random_elem(rng, k, 5);
      if (x.is_zero()) continue;
      CHECK(x * x.inverse() == k->one());
      UniPoly mp = x.min_poly();
      CHECK(lift_poly(mp, k)(x).is_zero());
      CHECK(is_irreducible_over_q(mp));
    }
  }

  TEST_CASE("Galois cubic detection against the resultant oracle") {
    for (const auto& m : {kE7, kE9, make_poly({-2, 0, 0, 1})}) {
      // disc = -res(m, m') for monic cubics.
      CHECK(cubic_discriminant(m) == -resultant(m, m.derivative()));
    }
    CHECK(*is_galois_cubic(kE7) == 7);
    CHECK(cubic_discriminant(kE7) == 49);
    CHECK(cubic_discriminant(kE9) == 81);
    CHECK(*is_galois_cubic(kE9) == 9);
    CHECK_FALSE(is_galois_cubic(make_poly({-2, 0, 0, 1})).has_value());
    CHECK(cubic_discriminant(make_poly({-2, 0, 0, 1})) == -108);
    CHECK_THROWS_AS(is_galois_cubic(make_poly({-1, 0, 1})), PreconditionError);
    CHECK_THROWS_AS(is_galois_cubic(make_poly({0, -1, 0, 1})), PreconditionError);
  }

  TEST_CASE("cubic automorphism") {
    for (const auto& m : {kE7, kE9}) {
      auto g = cubic_sigma(m);
      NfElem a = g.field->generator();
      CHECK(g.sigma_image == a * a - g.field->from_rat(2));
      CHECK(lift_poly(m, g.field)(g.sigma_image).is_zero());
      CHECK(g.apply(g.apply(g.apply(a))) == a);
      CHECK_FALSE(g.apply(a) == a);
      Rng rng(4);
      for (int i = 0; i < 10; ++i) {
        NfElem x = random_elem(rng, g.field, 4), y = random_elem(rng, g.field, 4);
        CHECK(g.apply(x + y) == g.apply(x) + g.apply(y));
        CHECK(g.apply(x * y) == g.apply(x) * g.apply(y));
      }
    }
    CHECK_THROWS_AS(cubic_sigma(make_poly({-2, 0, 0, 1})), PreconditionError);
  }

  TEST_CASE("cubic norms") {
    auto g = cubic_sigma(kE7);
    const auto& k = g.field;
    NfElem a = k->generator();
    CHECK(nf_norm(k->one(), g) == 1);
    CHECK(nf_norm(a, g) == 1);
    // N(a + 2) = -res(m, x - (y + 2)) oracle: the product of (r + 2) over roots r is -m(-2).
    CHECK(nf_norm(a + k->from_rat(2), g) == -kE7(Rat(-2)));
    CHECK(nf_norm(a + k->from_rat(2), g) == 1);
    CHECK(nf_norm(k->from_rat(Rat(3, 2)), g) == Rat(27, 8));
    Rng rng(9);
    for (int i = 0; i < 10; ++i) {
      NfElem x = random_elem(rng, k, 6), y = random_elem(rng, k, 6);
      CHECK(nf_norm(x * y, g) == nf_norm(x, g) * nf_norm(y, g));
      CHECK(nf_norm(x, g) == x.norm());
    }
    CHECK_THROWS_AS(nf_norm(a, CubicGaloisData{}), PreconditionError);
  }

  TEST_CASE("factoring over number fields") {
    auto k = NumberField::create(kE7);
    NfElem a = k->generator();
    auto f = nf_factor(kE7, k);
    REQUIRE(f.size() == 3);
    std::vector<NfElem> roots;
    for (const auto& [g, e] : f) {
      CHECK(g.degree() == 1);
      CHECK(e == 1);
      roots.push_back(-g.coeff(0));
    }
    NfElem s = a * a - k->from_rat(2);
    NfElem third = -k->one() - a - s;
    for (const auto& r : {a, s, third}) CHECK(std::count(roots.begin(), roots.end(), r) == 1);
    CHECK(product(f, k) == lift_poly(kE7, k));

    auto q2 = NumberField::create(make_poly({-2, 0, 1}));
    auto g = nf_factor(make_poly({1, 0, 1}), q2);
    REQUIRE(g.size() == 1);
    CHECK(g[0].first.degree() == 2);

    NfPoly sq = NfPoly::linear(a) * NfPoly::linear(a);
    auto h = nf_factor(sq);
    REQUIRE(h.size() == 1);
    CHECK(h[0].second == 2);
    CHECK(h[0].first == NfPoly::linear(a));
  }

  TEST_CASE("Trager factorization of a rational polynomial over a quartic field") {
    // Q(sqrt2, sqrt3): x^4 - 10x^2 + 1 splits completely.
    auto k = NumberField::create(make_poly({1, 0, -10, 0, 1}));
    auto f = nf_factor(make_poly({1, 0, -10, 0, 1}), k);
    CHECK(f.size() == 4);
    auto g = nf_factor(make_poly({-2, 0, 1}) * make_poly({-5, 0, 1}), k);
    // sqrt2 splits, sqrt5 does not.
    REQUIRE(g.size() == 3);
    CHECK(product(g, k) == lift_poly(make_poly({-2, 0, 1}) * make_poly({-5, 0, 1}), k));
  }

  TEST_CASE("splitting fields") {
    auto s1 = splitting_field(make_poly({-2, 0, 1}));
    CHECK(s1.field->degree() == 2);
    CHECK(s1.roots.size() == 2);

    auto s2 = splitting_field(kE7);
    CHECK(s2.field->degree() == 3);
    CHECK(s2.field->tower().size() == 1);

    auto s3 = splitting_field(make_poly({-2, 0, 0, 1}));
    CHECK(s3.field->degree() == 6);
    CHECK(s3.field->tower().size() == 2);
    REQUIRE(s3.roots.size() == 3);
    for (const auto& r : s3.roots) CHECK(r.pow(3) == s3.field->from_rat(2));

    auto s4 = splitting_field(make_poly({0, -1, 0, 1}));
    CHECK(s4.field->is_q());
    CHECK(s4.roots.size() == 3);
  }

  TEST_CASE("extension embeds the base field") {
    auto k = NumberField::create(make_poly({-2, 0, 1}));
    auto ext = extend(k, lift_poly(make_poly({-3, 0, 1}), k));
    CHECK(ext.field->degree() == 4);
    CHECK(ext.old_generator * ext.old_generator == ext.field->from_rat(2));
    CHECK(ext.root * ext.root == ext.field->from_rat(3));
    NfElem x = k->generator() + k->from_rat(5);
    NfElem ex = embed(x, ext.old_generator);
    CHECK(ex * ex == embed(x * x, ext.old_generator));
  }
}
