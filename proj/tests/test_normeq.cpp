#include "doctest.h"

#include "sbsplit/normeq.hpp"
#include "sbsplit/rng.hpp"

using namespace sbsplit;

namespace {

const UniPoly kE7 = make_poly({-1, -2, 1, 1});
const UniPoly kE9 = make_poly({1, -3, 0, 1});

NfElem random_elem(Rng& rng, const FieldPtr& k, long bound) {
  while (true) {
    std::vector<Rat> c;
    for (int i = 0; i < 3; ++i) c.emplace_back(rng.uniform(-bound, bound));
    NfElem x(k, c);
    if (!x.is_zero()) return x;
  }
}

}  // namespace

TEST_SUITE("normeq") {
  TEST_CASE("local obstruction at the inert prime 2") {
    NormProblem p{cubic_sigma(kE7), Rat(2)};
    auto cert = local_obstruction(p);
    REQUIRE(cert.has_value());
    CHECK(cert->prime == 2);
    CHECK(cert->kind == "inert");
    CHECK(cert->valuation == -1);
    CHECK(check_certificate(p, *cert));
    // Independent re-check: the field polynomial has no root mod 2, so it is irreducible.
    for (long x = 0; x < 2; ++x) CHECK(((x * x * x + x * x - 2 * x - 1) % 2 + 2) % 2 != 0);
  }

  TEST_CASE("no obstruction for norms") {
    auto g = cubic_sigma(kE7);
    CHECK_FALSE(local_obstruction({g, Rat(1)}).has_value());
    CHECK_FALSE(local_obstruction({g, Rat(8)}).has_value());
    // The certificate is tied to its problem.
    NormProblem p2{g, Rat(2)};
    auto cert = *local_obstruction(p2);
    CHECK_FALSE(check_certificate({g, Rat(8)}, cert));
  }

  TEST_CASE("obstructions at 3 and at 1/2") {
    auto g = cubic_sigma(kE7);
    for (const Rat& b : {Rat(3), Rat(1, 2), Rat(4)}) {
      NormProblem p{g, b};
      auto cert = local_obstruction(p);
      REQUIRE(cert.has_value());
      CHECK(cert->kind == "inert");
      CHECK(check_certificate(p, *cert));
    }
  }

  TEST_CASE("ramified certificates at the conductor") {
    // 7 is tamely ramified in E7; a - 2 has minimal polynomial x^3 + 7x^2 + 14x + 7,
    // Eisenstein at 7. The residue of 1/2 mod 7 is 4, not a cube, so 1/2 is not a local norm.
    auto g = cubic_sigma(kE7);
    NfElem a = g.field->generator();
    UniPoly eis = (a - g.field->from_rat(2)).min_poly();
    CHECK(eis == make_poly({7, 14, 7, 1}));
    NormProblem p{g, Rat(2)};
    NormCertificate c{7, "ramified", eis, 0};
    CHECK(check_certificate(p, c));
    // 13 splits in E7 and 1/13 has cube residue 6 at 7: no obstruction anywhere.
    NormProblem p13{g, Rat(13)};
    CHECK_FALSE(check_certificate(p13, c));
    CHECK_FALSE(local_obstruction(p13).has_value());
    auto r = solve_norm(p13);
    REQUIRE(r.status == NormResult::Status::Solution);
    CHECK(nf_norm(*r.solution, g) * 13 == 1);
  }

  TEST_CASE("the wild prime is never certified") {
    // 3 = N(2 - a) over the conductor-9 field, where 3 is wildly ramified.
    auto g = cubic_sigma(kE9);
    NfElem a = g.field->generator();
    CHECK(nf_norm(g.field->from_rat(2) - a, g) == 3);
    NormProblem p{g, Rat(3)};
    CHECK_FALSE(local_obstruction(p).has_value());
    auto r = solve_norm(p);
    REQUIRE(r.status == NormResult::Status::Solution);
    CHECK(nf_norm(*r.solution, g) * 3 == 1);
  }

  TEST_CASE("solutions for norms of random elements") {
    for (const auto& m : {kE7, kE9}) {
      auto g = cubic_sigma(m);
      Rng rng(21);
      for (int i = 0; i < 5; ++i) {
        NfElem y = random_elem(rng, g.field, 3);
        NormProblem p{g, 1 / nf_norm(y, g)};
        auto r = solve_norm(p);
        REQUIRE(r.status == NormResult::Status::Solution);
        CHECK(nf_norm(*r.solution, g) * p.beta == 1);
      }
    }
  }

  TEST_CASE("trivial norm equations and bound starvation") {
    auto g = cubic_sigma(kE7);
    auto r = solve_norm({g, Rat(1)});
    REQUIRE(r.status == NormResult::Status::Solution);
    CHECK(nf_norm(*r.solution, g) == 1);
    auto r2 = solve_norm({g, Rat(2)});
    CHECK(r2.status == NormResult::Status::NoSolution);
    // y = 7 + 5a - 6a^2 has a large norm; a bound of 1 cannot find a preimage.
    NfElem y(g.field, std::vector<Rat>{7, 5, -6});
    auto r3 = solve_norm({g, 1 / nf_norm(y, g)}, 1);
    CHECK(r3.status == NormResult::Status::Unknown);
    CHECK(r3.search_bound == 1);
  }
}
