#include <doctest.h>

#include "ncball/errors.hpp"
#include "ncball/json_io.hpp"

using namespace ncball;
using namespace ncball::jsonio;

TEST_CASE("automorphism round trip is exact") {
  const auto phi = cball::random_automorphism(77, 3);
  const json j = encode(phi);
  const auto back = decode_automorphism(j, "");
  CHECK(max_abs(CMat(back.unitary_part() - phi.unitary_part())) == 0.0);
  CHECK(cball::distance(back.center(), phi.center()) == 0.0);
  // serialized form re-serializes identically
  CHECK(encode(back).dump() == j.dump());
}

TEST_CASE("free polynomial round trip is exact") {
  freepoly::FreePolynomial p(2);
  p.add_term(freepoly::Word{}, Complex(1.0, -2.0));
  p.add_term(freepoly::Word{{1, 2, 1}}, Complex(0.125, 0.25));
  const json j = encode(p);
  const auto back = decode_free_poly(j, "");
  CHECK(back.terms().size() == p.terms().size());
  CHECK(encode(back).dump() == j.dump());
}

TEST_CASE("cpoly and element round trips") {
  dshift::CPoly f(2);
  f.add_term(dshift::MultiIndex({1, 2}), Complex(3.0, 0.5));
  const auto f_back = decode_cpoly(encode(f), "");
  CHECK(encode(f_back).dump() == encode(f).dump());

  semicrossed::SemicrossedElement x(2);
  x.add_term(0, freepoly::Word{{1}}, Complex(1.0, 1.0));
  x.add_term(2, freepoly::Word{}, Complex(-1.0, 0.0));
  const auto x_back = decode_element(encode(x), "");
  CHECK(encode(x_back).dump() == encode(x).dump());
}

TEST_CASE("nest representation decodes through its parameters") {
  std::vector<cball::BallPoint> z;
  for (int i = 0; i < 3; ++i) {
    CVec v(2);
    v << Complex(0.02 * i, 0.01), Complex(-0.03 * i, 0.015 * i);
    z.emplace_back(v);
  }
  const auto rep = nestrep::build_rho(z, freepoly::Word{{1, 2}}, 0.6);
  const auto back = decode_rep(encode(rep), "");
  CHECK(back.delta == rep.delta);
  CHECK(back.word == rep.word);
  for (int j = 0; j < 2; ++j)
    CHECK(max_abs(CMat(back.generator_images[j] - rep.generator_images[j])) == 0.0);
}

TEST_CASE("schema violations carry pointer paths") {
  json bad = {{"n", 2},
              {"unitary", json::array({json::array({json::array({1.0, 0.0}),
                                                    json::array({0.0, 0.0})}),
                                       json::array({json::array({0.0, 0.0}),
                                                    json::array({2.0, 0.0})})})},
              {"center", json::array({json::array({0.0, 0.0}),
                                      json::array({0.0, 0.0})})}};
  try {
    decode_automorphism(bad, "");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaViolation);
    CHECK(std::string(e.what()).find("/unitary") != std::string::npos);
    CHECK(std::string(e.what()).find("unitary") != std::string::npos);
  }

  json missing = {{"n", 2}};
  try {
    decode_automorphism(missing, "");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaViolation);
  }
}

TEST_CASE("commuting pair round trip") {
  CVec x(2), y(2);
  x << Complex(0.3, 0.1), Complex(-0.2, 0.0);
  y << Complex(0.0, -0.4), Complex(0.25, 0.25);
  const dshift::CommutingPair2x2 pair(cball::BallPoint(x), cball::BallPoint(y),
                                      Complex(0.5, -0.125));
  const auto back = decode_commuting_pair(encode(pair), "");
  CHECK(encode(back).dump() == encode(pair).dump());
  CHECK(back.t == pair.t);
}

TEST_CASE("digest is stable") {
  CHECK(digest("abc") == digest("abc"));
  CHECK(digest("abc") != digest("abd"));
}
