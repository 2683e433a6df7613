#include "doctest.h"

#include "sbsplit/surface.hpp"

using namespace sbsplit;

namespace {

QMatrix random_invertible(Rng& rng, std::size_t n, long bound) {
  while (true) {
    QMatrix m(n, n);
    for (auto& x : m.data()) x = rng.uniform(-bound, bound);
    if (inverse(m)) return m;
  }
}

// Derivative of the monomial map along x: d/de p((1 + e x) v) at e = 0.
QVector monomial_derivative(const QMatrix& x, const QVector& v) {
  QVector xv = x * v;
  QVector out;
  for (const auto& e : s0_monomials()) {
    Rat d = 0;
    for (int k = 0; k < 3; ++k) {
      if (e[k] == 0) continue;
      Rat term = Rat(e[k]) * xv[k];
      for (int j = 0; j < 3; ++j) {
        int pw = e[j] - (j == k ? 1 : 0);
        for (int r = 0; r < pw; ++r) term *= v[j];
      }
      d += term;
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace

TEST_SUITE("surface") {
  TEST_CASE("points of S0") {
    QVector p = s0_point(1, 2, 3);
    QVector expect{1, 8, 27, 2, 12, 9, 4, 18, 3, 6};
    CHECK(p == expect);
    CHECK(s0_point(1, 0, 0) == QVector{1, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    CHECK(s0_point(1, 1, 1) == QVector(10, Rat(1)));
    CHECK_THROWS_AS(s0_point(0, 0, 0), PreconditionError);
  }

  TEST_CASE("the 27 quadrics of S0") {
    QMatrix ev = s0_evaluation_map();
    CHECK(ev.rows() == 55);
    CHECK(ev.cols() == 28);
    CHECK(rank(ev) == 28);
    auto s = s0_quadrics();
    REQUIRE(s.quadrics.size() == 27);
    CHECK_NOTHROW(validate_surface(s));
    Rng rng(1);
    for (const auto& a : s.quadrics) {
      CHECK(vanishes_on_s0(a));
      for (int k = 0; k < 5; ++k) {
        QVector p = s0_point(rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(1, 9));
        QVector ap = a * p;
        Rat v = 0;
        for (std::size_t i = 0; i < 10; ++i) v += p[i] * ap[i];
        CHECK(v == 0);
      }
    }
    QMatrix bad(10, 10);
    bad(0, 0) = 1;
    CHECK_FALSE(vanishes_on_s0(bad));
  }

  TEST_CASE("validation") {
    auto s = s0_quadrics();
    auto dup = s;
    dup.quadrics[1] = dup.quadrics[0];
    CHECK_THROWS_AS(validate_surface(dup), InvalidInput);
    auto asym = s;
    asym.quadrics[0](0, 1) += 1;
    CHECK_THROWS_AS(validate_surface(asym), InvalidInput);
    auto short_list = s;
    short_list.quadrics.pop_back();
    CHECK_THROWS_AS(validate_surface(short_list), InvalidInput);
  }

  TEST_CASE("Sym3 is the derivative of the monomial map and lies in L(S0)") {
    Sl3Rep rep = sym3_rep();
    QVector v{2, -1, 3};
    for (std::size_t k = 0; k < 8; ++k) {
      QVector p = s0_point(v[0], v[1], v[2]);
      CHECK(rep[k] * p == monomial_derivative(sl3_basis()[k], v));
    }
    auto l = lie_of_surface(s0_quadrics());
    MatrixSpan span(l.basis);
    for (const auto& m : rep) CHECK(span.coords(m).has_value());
  }

  TEST_CASE("Lie algebra of S0") {
    auto l = lie_of_surface(s0_quadrics());
    CHECK(l.basis.size() == 9);
    CHECK_NOTHROW(l.algebra.validate());
    auto tl = traceless_part(l);
    REQUIRE(tl.has_value());
    CHECK(tl->size() == 8);
    auto g = LieAlgebra::from_matrices(*tl);
    CHECK(killing_and_checks(g).simple8);
    CHECK(is_irreducible_module(l.basis));
    // Witnesses reproduce the defining relation.
    auto s = s0_quadrics();
    for (std::size_t k = 0; k < l.basis.size(); ++k) {
      const QMatrix& x = l.basis[k];
      for (std::size_t i = 0; i < 27; ++i) {
        QMatrix rhs(10, 10);
        for (std::size_t j = 0; j < 27; ++j) rhs += s.quadrics[j] * l.witnesses[k](i, j);
        CHECK(x.transpose() * s.quadrics[i] + s.quadrics[i] * x == rhs);
      }
    }
  }

  TEST_CASE("twists and covariance") {
    Rng rng(7);
    auto s0 = s0_quadrics();
    CHECK(same_span(twist_surface(QMatrix::identity(10)).quadrics, s0.quadrics));
    CHECK(same_span(twist_surface(QMatrix::identity(10) * Rat(5)).quadrics, s0.quadrics));
    CHECK_THROWS_AS(twist_surface(QMatrix(10, 10)), PreconditionError);

    auto l0 = lie_of_surface(s0);
    QMatrix m = random_invertible(rng, 10, 3);
    QMatrix minv = *inverse(m);
    auto s = twist_surface(m);
    CHECK_NOTHROW(validate_surface(s));
    auto l = lie_of_surface(s);
    std::vector<QMatrix> conj;
    for (const auto& x : l0.basis) conj.push_back(m * x * minv);
    CHECK(same_span(l.basis, conj));
    CHECK(verify_parametrization(s, m));
    CHECK(verify_parametrization(s, m * Rat(-2)));
    CHECK_FALSE(verify_parametrization(s, random_invertible(rng, 10, 3)));
    CHECK(verify_parametrization(s0, QMatrix::identity(10)));
  }

  TEST_CASE("small points give a split Cartan subalgebra") {
    Rng rng(11);
    for (int trial = 0; trial < 2; ++trial) {
      QMatrix m = random_invertible(rng, 10, 3);
      auto s = twist_surface(m);
      auto pts = small_points(s);
      REQUIRE(pts.size() >= 2);
      QMatrix minv = *inverse(m);
      for (const auto& p : pts) {
        for (const auto& a : s.quadrics) {
          QVector ap = a * p;
          Rat q = 0;
          for (std::size_t i = 0; i < 10; ++i) q += p[i] * ap[i];
          CHECK(q == 0);
        }
        // M^-1 p is a point of S0: rank one against the monomial map, i.e. on every
        // quadric of S0.
        for (const auto& a : s0_quadrics().quadrics) {
          QVector x = minv * p;
          QVector ax = a * x;
          Rat q = 0;
          for (std::size_t i = 0; i < 10; ++i) q += x[i] * ax[i];
          CHECK(q == 0);
        }
      }
      auto tl = *traceless_part(lie_of_surface(s));
      LieAlgebra g = LieAlgebra::from_matrices(tl);
      auto h = cartan_from_points(g, tl, pts, rng);
      REQUIRE(h.has_value());
      CHECK(is_split_cartan(g, *h, rng));
    }
  }

  TEST_CASE("decide and parametrize") {
    Rng rng(3);
    auto v0 = decide_and_parametrize(s0_quadrics(), rng);
    REQUIRE(v0.status == PipelineVerdict::Status::Split);
    CHECK(verify_parametrization(s0_quadrics(), *v0.matrix));

    for (int trial = 0; trial < 2; ++trial) {
      QMatrix m = random_invertible(rng, 10, 3);
      auto s = twist_surface(m);
      auto v = decide_and_parametrize(s, rng);
      REQUIRE(v.status == PipelineVerdict::Status::Split);
      CHECK(verify_parametrization(s, *v.matrix));
      // Normalized: the first nonzero entry is 1.
      for (const auto& x : v.matrix->data())
        if (sgn(x) != 0) {
          CHECK(x == 1);
          break;
        }
    }

    auto bad = s0_quadrics();
    bad.quadrics.pop_back();
    CHECK(decide_and_parametrize(bad, rng).status == PipelineVerdict::Status::Invalid);
  }
}
