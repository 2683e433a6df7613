#include <functional>

#include "doctest.h"

#include "sbsplit/json_io.hpp"

using namespace sbsplit;

namespace {

CubicGaloisData e7() { return cubic_sigma(UniPoly({Rat(-1), Rat(-2), Rat(1), Rat(1)}, Rat(0))); }

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("json") {
  TEST_CASE("rationals are strings") {
    CHECK(to_json(Rat(-3, 4)) == Json("-3/4"));
    CHECK(rat_from_json(Json("6/8"), "x") == Rat(3, 4));
    CHECK(error_of([] { rat_from_json(Json(3), "/q"); }) == "/q: expected a rational string");
    CHECK(error_of([] { rat_from_json(Json("1/0"), "/q"); }).rfind("/q: ", 0) == 0);
  }

  TEST_CASE("surface and map round trips") {
    auto s = s0_quadrics();
    auto back = surface_from_json(parse_json(dump_json(surface_to_json(s)), "mem"));
    REQUIRE(back.quadrics.size() == 27);
    for (std::size_t i = 0; i < 27; ++i) CHECK(back.quadrics[i] == s.quadrics[i]);
    QMatrix m = QMatrix::identity(10);
    m(0, 3) = Rat(-2, 7);
    Json mj = map_to_json(m);
    CHECK(mj["status"] == "split");
    CHECK(map_from_json(mj) == m);
  }

  TEST_CASE("Lie algebra, algebra, field and element round trips") {
    const auto& g = sl3_algebra();
    auto g2 = lie_from_json(lie_to_json(g));
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) CHECK(g2.sc(i, j) == g.sc(i, j));

    auto gal = e7();
    AssocAlg a = cyclic_table(gal, Rat(2));
    AssocAlg a2 = algebra_from_json(parse_json(dump_json(algebra_to_json(a)), "mem"));
    CHECK(a2.unit() == a.unit());
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 9; ++j) CHECK(a2.mt(i, j) == a.mt(i, j));

    FieldPtr f = field_from_json(field_to_json(gal.field));
    CHECK(f->modulus() == gal.field->modulus());
    NfElem x(f, {Rat(1), Rat(-2, 3), Rat(5)});
    CHECK(elem_from_json(elem_to_json(x), f).coords() == x.coords());
  }

  TEST_CASE("certificates round trip and re-check") {
    NormProblem p{e7(), Rat(2)};
    auto c = local_obstruction(p);
    REQUIRE(c.has_value());
    Json j = certificate_to_json(*c);
    CHECK(j["prime"] == 2);
    CHECK(check_certificate(p, certificate_from_json(j)));
  }

  TEST_CASE("parse errors carry line and column") {
    std::string text = "{\n  \"n\": 10,\n  \"quadrics\": [1,,]\n}";
    std::string msg = error_of([&] { parse_json(text, "in.json"); });
    CHECK(msg.rfind("in.json:3:", 0) == 0);
  }

  TEST_CASE("schema errors carry a JSON pointer") {
    CHECK(error_of([] { surface_from_json(Json{{"n", 10}}); }) == "<root>: missing key \"quadrics\"");
    CHECK(error_of([] { surface_from_json(Json{{"n", 9}, {"quadrics", Json::array()}}); }) == "/n: expected n = 10");
    Json bad = surface_to_json(s0_quadrics());
    bad["quadrics"][4][2][7] = 1;
    CHECK(error_of([&] { surface_from_json(bad); }) == "/quadrics/4/2/7: expected a rational string");
    Json lie = lie_to_json(sl3_algebra());
    lie["sc"][0]["k"] = 8;
    CHECK(error_of([&] { lie_from_json(lie); }) == "/sc/0/k: index out of range");
    CHECK(error_of([] { field_from_json(Json{{"tower", Json::array({Json::array({"1", "0", "2"})})}}); }) ==
          "/tower/0: polynomial is not monic");
  }

  TEST_CASE("verdicts carry certificates") {
    AssocAlg a = cyclic_table(e7(), Rat(2));
    Rng rng(0);
    Json j = csa_result_to_json(split_csa(a, rng));
    CHECK(j["status"] == "non-split");
    CHECK(j["certificate"]["prime"] == 2);
  }
}
