#include "doctest.h"

#include "sbsplit/csa.hpp"
#include "sbsplit/rng.hpp"

using namespace sbsplit;

namespace {

const UniPoly kE7 = make_poly({-1, -2, 1, 1});

QMatrix unit_matrix(std::size_t i, std::size_t j) {
  QMatrix m(3, 3);
  m(i, j) = 1;
  return m;
}

QMatrix random_invertible(Rng& rng, std::size_t n, long bound) {
  while (true) {
    QMatrix m(n, n);
    for (auto& x : m.data()) x = rng.uniform(-bound, bound);
    if (inverse(m)) return m;
  }
}

// M3(Q) on a random basis.
MatrixAlgebra scrambled_m3(Rng& rng) {
  QMatrix s = random_invertible(rng, 9, 2);
  std::vector<QMatrix> basis;
  for (std::size_t c = 0; c < 9; ++c) {
    QMatrix m(3, 3);
    for (std::size_t k = 0; k < 9; ++k) m += unit_matrix(k / 3, k % 3) * s(k, c);
    basis.push_back(m);
  }
  return algebra_from_matrices(basis);
}

// The same algebra on the basis e'_i = sum_k s(k, i) e_k.
AssocAlg change_basis(const AssocAlg& a, const QMatrix& s) {
  const std::size_t n = a.dim();
  QMatrix sinv = *inverse(s);
  std::vector<QVector> cols;
  for (std::size_t i = 0; i < n; ++i) {
    QVector v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = s(k, i);
    cols.push_back(v);
  }
  std::vector<std::vector<QVector>> mt(n, std::vector<QVector>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mt[i][j] = sinv * a.mul(cols[i], cols[j]);
  return AssocAlg(n, std::move(mt), sinv * a.unit());
}

}  // namespace

TEST_SUITE("csa") {
  TEST_CASE("closures of matrix sets") {
    auto small = assoc_closure({unit_matrix(0, 0)});
    CHECK(small.alg.dim() == 2);
    auto full = assoc_closure({unit_matrix(0, 1), unit_matrix(1, 2), unit_matrix(2, 0)});
    CHECK(full.alg.dim() == 9);
    CHECK_NOTHROW(full.alg.validate());
    auto sl3 = assoc_closure(sl3_basis());
    CHECK(sl3.alg.dim() == 9);
    CHECK(sl3.basis[0] == QMatrix::identity(3));
    CHECK_THROWS_AS(algebra_from_matrices({unit_matrix(0, 1)}), PreconditionError);
  }

  TEST_CASE("centre and simplicity") {
    Rng rng(1);
    auto m3 = scrambled_m3(rng);
    auto info = centre_and_simplicity(m3.alg);
    CHECK(info.centre_dim == 1);
    CHECK(info.central_simple);

    auto diag = assoc_closure({unit_matrix(0, 0)});  // Q x Q
    auto d = centre_and_simplicity(diag.alg);
    CHECK(d.centre_dim == 2);
    CHECK(d.semisimple);
    CHECK_FALSE(d.central_simple);

    // Upper triangular 2x2 matrices have a radical.
    QMatrix e11(2, 2), e12(2, 2);
    e11(0, 0) = 1;
    e12(0, 1) = 1;
    auto tri = centre_and_simplicity(assoc_closure({e11, e12}).alg);
    CHECK_FALSE(tri.semisimple);
  }

  TEST_CASE("minimal polynomials of elements") {
    auto full = assoc_closure({unit_matrix(0, 1), unit_matrix(1, 2), unit_matrix(2, 0)});
    MatrixSpan span(full.basis);
    CHECK(min_poly_element(full.alg, full.alg.unit()) == make_poly({-1, 1}));
    CHECK(min_poly_element(full.alg, *span.coords(unit_matrix(0, 1))) == make_poly({0, 0, 1}));
    auto t = cyclic_table(cubic_sigma(kE7), Rat(2));
    CHECK(min_poly_element(t, t.basis(1)) == kE7);
  }

  TEST_CASE("zero divisors give splittings") {
    Rng rng(2);
    for (int trial = 0; trial < 3; ++trial) {
      auto m3 = scrambled_m3(rng);
      MatrixSpan span(m3.basis);
      QMatrix rank1 = unit_matrix(0, 0);
      QMatrix rank2 = unit_matrix(0, 0) + unit_matrix(1, 1);
      for (const auto& z : {rank1, rank2}) {
        auto w = zero_divisor_to_split(m3.alg, *span.coords(z));
        CHECK(verify_split_witness(m3.alg, w));
      }
      CHECK_THROWS_AS(zero_divisor_to_split(m3.alg, m3.alg.unit()), PreconditionError);
    }
  }

  TEST_CASE("cyclic tables") {
    auto g = cubic_sigma(kE7);
    for (Rat beta : {Rat(1), Rat(2), Rat(1, 3)}) {
      auto a = cyclic_table(g, beta);
      CHECK_NOTHROW(a.validate());
      CHECK(centre_and_simplicity(a).central_simple);
      CHECK(verify_presentation(a, table_presentation(g, beta)));
    }
  }

  TEST_CASE("norm solutions split cyclic tables") {
    auto g = cubic_sigma(kE7);
    NfElem y(g.field, {Rat(2), Rat(-1), Rat(3)});
    Rat beta = 1 / nf_norm(y, g);
    auto a = cyclic_table(g, beta);
    auto p = table_presentation(g, beta);
    auto w = split_from_norm_solution(a, p, y);
    CHECK(verify_split_witness(a, w));
    CHECK_THROWS_AS(split_from_norm_solution(a, p, g.field->one()), PreconditionError);

    for (Rat b : {Rat(1), Rat(8), beta}) {
      auto t = cyclic_table(g, b);
      auto r = decide_cyclic(t, table_presentation(g, b), 200);
      REQUIRE(r.status == CsaResult::Status::Split);
      CHECK(verify_split_witness(t, *r.witness));
    }
    auto ns = decide_cyclic(cyclic_table(g, Rat(2)), table_presentation(g, Rat(2)), 200);
    CHECK(ns.status == CsaResult::Status::NonSplit);
    CHECK(ns.certificate->prime == 2);
  }

  TEST_CASE("split_csa on scrambled algebras") {
    Rng rng(4);
    for (int trial = 0; trial < 3; ++trial) {
      auto m3 = scrambled_m3(rng);
      auto r = split_csa(m3.alg, rng);
      REQUIRE(r.status == CsaResult::Status::Split);
      CHECK(verify_split_witness(m3.alg, *r.witness));
    }
    auto g = cubic_sigma(kE7);
    QMatrix s = random_invertible(rng, 9, 1);
    auto hidden = change_basis(cyclic_table(g, Rat(2)), s);
    CHECK(centre_and_simplicity(hidden).central_simple);
    auto r = split_csa(hidden, rng);
    CHECK(r.status == CsaResult::Status::NonSplit);
    REQUIRE(r.certificate.has_value());
    CHECK(check_certificate({r.presentation->galois, r.presentation->beta}, *r.certificate));

    NfElem y(g.field, {Rat(1), Rat(1), Rat(-2)});
    auto split_hidden = change_basis(cyclic_table(g, 1 / nf_norm(y, g)), s);
    auto rs = split_csa(split_hidden, rng);
    REQUIRE(rs.status == CsaResult::Status::Split);
    CHECK(verify_split_witness(split_hidden, *rs.witness));
  }

  TEST_CASE("restricted representation is a homomorphism") {
    const auto& g = sl3_algebra();
    QMatrix h(3, 3);
    h(0, 1) = 2;
    h(1, 0) = 1;
    QMatrix d(3, 3);
    d(0, 0) = 1;
    d(1, 1) = 1;
    d(2, 2) = -2;
    std::vector<QVector> cartan{sl3_coords(h), sl3_coords(d)};
    auto gen = generic_cartan_element(g, cartan);
    auto sf = splitting_field(gen.root_poly);
    auto iso = split_iso_sl3(g, cartan, sf.field);
    auto rho = restricted_rep(iso);
    CHECK(rho[0].rows() == 6);
    CHECK(is_lie_hom(g, rho));
    auto alg = assoc_closure(rho);
    CHECK(alg.alg.dim() == 9);
    CHECK(centre_and_simplicity(alg.alg).central_simple);
  }

  TEST_CASE("recognizing sl3 through the associative algebra") {
    auto g = cubic_sigma(kE7);
    Rng rng(9);
    auto lie_ns = commutator_algebra(cyclic_table(g, Rat(2)));
    CHECK(lie_ns.dim() == 8);
    CHECK_NOTHROW(lie_ns.validate());
    auto ns = recognize_sl3(lie_ns, rng);
    CHECK(ns.status == Sl3Decision::Status::NonSplit);
    CHECK(ns.route == "csa");
    CHECK(ns.assoc_dim == 9);
    REQUIRE(ns.csa.has_value());
    REQUIRE(ns.csa->certificate.has_value());
    CHECK(check_certificate({ns.csa->presentation->galois, ns.csa->presentation->beta}, *ns.csa->certificate));

    auto direct_table = split_csa(cyclic_table(g, Rat(2)), rng);
    REQUIRE(direct_table.certificate.has_value());
    CHECK(direct_table.certificate->prime == 2);

    auto lie_s = commutator_algebra(cyclic_table(g, Rat(1)));
    auto s = recognize_sl3(lie_s, rng);
    REQUIRE(s.status == Sl3Decision::Status::Split);
    CHECK(is_lie_hom(lie_s, s.images));

    auto direct = recognize_sl3(sl3_algebra(), rng);
    CHECK(direct.status == Sl3Decision::Status::Split);
    CHECK(direct.route == "split-cartan");
  }
}
