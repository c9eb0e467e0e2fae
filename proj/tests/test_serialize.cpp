#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "persres/serialize.hpp"
#include "test_util.hpp"

using namespace persres;
using namespace persres::testing;

TEST_CASE("presentation round trip") {
  Rng rng(91);
  for (Field f : {Field::rationals(), Field::gf(5)}) {
    for (int trial = 0; trial < 10; ++trial) {
      Presentation p = random_presentation(rng, f, 2, 3, 3);
      Presentation back = presentation_from_json(presentation_to_json(p), f);
      CHECK(back == p);
    }
  }
}

TEST_CASE("complex round trip") {
  Field Q = Field::rationals();
  for (Presentation p : {make_N(Q), make_box(Q)}) {
    FreeChainComplex res = minimal_free_resolution(p);
    FreeChainComplex back = complex_from_json(complex_to_json(res), Q);
    CHECK(back == res);
  }
  FreeChainComplex c1 = make_C(Q);
  CHECK(complex_from_json(complex_to_json(c1), Q) == c1);
}

TEST_CASE("bifiltration round trip") {
  Rng rng(93);
  for (int trial = 0; trial < 5; ++trial) {
    Bifiltration k = random_bifiltration(rng);
    Bifiltration back = bifiltration_from_json(bifiltration_to_json(k));
    CHECK(back.simplices == k.simplices);
  }
}

TEST_CASE("certificates reverify after a JSON round trip") {
  Field F2 = Field::gf(2);
  Presentation m = make_M(Field::rationals());
  Presentation n = make_N(Field::rationals());

  auto msr = search_module_interleaving(m, n, q(1, 2), F2, 1 << 16);
  REQUIRE(msr.status == SearchStatus::found);
  json mj = certificate_to_json(*msr.certificate);
  CHECK(reverify_certificate(mj, m, n));
  // Tampering with the forward morphism must be caught.
  json tampered = mj;
  tampered["forward"][0][0] = "0";
  CHECK_FALSE(reverify_certificate(tampered, m, n));
  json wrong_eps = mj;
  wrong_eps["epsilon"] = "1/4";
  CHECK_FALSE(reverify_certificate(wrong_eps, m, n));

  auto hsr = derived_interleaving_search(m, n, q(1, 2), F2, 1 << 16);
  REQUIRE(hsr.status == SearchStatus::found);
  CHECK(reverify_certificate(certificate_to_json(*hsr.certificate), m, n));
}

TEST_CASE("malformed inputs throw") {
  Field Q = Field::rationals();
  CHECK_THROWS(presentation_from_json(json::parse(R"({"generators": []})"), Q));  // no n
  CHECK_THROWS(presentation_from_json(json::parse(R"({"n": 0, "generators": []})"), Q));
  CHECK_THROWS(presentation_from_json(
      json::parse(R"({"n": 2, "generators": [["0"]]})"), Q));  // dimension mismatch
  CHECK_THROWS(presentation_from_json(
      json::parse(R"({"n": 2, "generators": [["0","0"]],
                      "relations": [{"grade": ["1","1"], "coeffs": []}]})"),
      Q));  // coeffs not indexed by generators
  CHECK_THROWS(grade_from_json(json::parse(R"("not an array")")));
  CHECK_THROWS(bifiltration_from_json(
      json::parse(R"({"simplices": [{"vertices": [0, 1], "grade": ["0", "0"]}]})")));  // no faces
}

TEST_CASE("display formats") {
  CHECK(grade_to_display(grq(q(1, 2), q(-3, 4))) == "(1/2,-3/4)");
  DistanceBracket b;
  b.lower = q(1, 2);
  CHECK(bracket_to_display(b) == "[1/2, inf]");
  b.upper = q(3, 4);
  CHECK(bracket_to_display(b) == "[1/2, 3/4]");
}
