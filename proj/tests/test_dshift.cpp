#include <doctest.h>

#include <cmath>

#include "ncball/dshift.hpp"
#include "ncball/errors.hpp"

using namespace ncball;
using namespace ncball::dshift;
using cball::BallPoint;
using cball::MobiusAutomorphism;

namespace {

BallPoint pt2(Complex a, Complex b) {
  CVec v(2);
  v << a, b;
  return BallPoint(v);
}

CPoly rand_cpoly(Rng& rng, int d, int deg, int terms) {
  CPoly f(d);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> exps(d, 0);
    int budget = rng.uniform_int(0, deg);
    while (budget-- > 0) exps[rng.uniform_int(0, d - 1)] += 1;
    f.add_term(MultiIndex(std::move(exps)), rng.complex_normal());
  }
  return f;
}

}  // namespace

TEST_CASE("divided difference calculus on the defining cases") {
  const CommutingPair2x2 pair(pt2(0.3, 0.1), pt2(-0.2, 0.4), Complex(0.25, 0.1));
  // f = z_1 evaluates to M_1 itself
  CHECK(max_abs(CMat(ceval_2x2(CPoly::variable(2, 1), pair) - pair.matrix(1))) == 0.0);
  // constants give the identity
  CHECK(max_abs(CMat(ceval_2x2(CPoly::unit(2), pair) - CMat::Identity(2, 2))) == 0.0);
}

TEST_CASE("divided difference calculus is a homomorphism") {
  Rng rng(401);
  for (int i = 0; i < 50; ++i) {
    const int d = rng.uniform_int(1, 3);
    const BallPoint x(random_interior_vector(rng, d, 0.8));
    BallPoint y(random_interior_vector(rng, d, 0.8));
    while (cball::distance(x, y) <= 1e-9)
      y = BallPoint(random_interior_vector(rng, d, 0.8));
    const CommutingPair2x2 pair(x, y, rng.complex_normal());
    const CPoly f = rand_cpoly(rng, d, 3, 5);
    const CPoly g = rand_cpoly(rng, d, 3, 5);
    const CMat lhs = ceval_2x2(f * g, pair);
    const CMat rhs = ceval_2x2(f, pair) * ceval_2x2(g, pair);
    CHECK(max_abs(CMat(lhs - rhs)) <= 1e-12);
  }
}

TEST_CASE("commuting pair matrices commute") {
  Rng rng(409);
  for (int i = 0; i < 20; ++i) {
    const int d = rng.uniform_int(2, 4);
    const BallPoint x(random_interior_vector(rng, d, 0.7));
    BallPoint y(random_interior_vector(rng, d, 0.7));
    while (cball::distance(x, y) <= 1e-9)
      y = BallPoint(random_interior_vector(rng, d, 0.7));
    const CommutingPair2x2 pair(x, y, rng.complex_normal());
    for (int a = 1; a <= d; ++a)
      for (int b = a + 1; b <= d; ++b) {
        const CMat comm = pair.matrix(a) * pair.matrix(b) - pair.matrix(b) * pair.matrix(a);
        CHECK(max_abs(comm) <= 1e-15);
        // through the calculus the product is evaluated once, identically
        const CMat via_calc =
            ceval_2x2(CPoly::variable(d, a) * CPoly::variable(d, b), pair) -
            ceval_2x2(CPoly::variable(d, b) * CPoly::variable(d, a), pair);
        CHECK(max_abs(via_calc) == 0.0);
      }
  }
}

TEST_CASE("one-variable symmetric truncation is the unweighted shift") {
  const auto t = symfock_truncation(1, 2);
  CHECK(t.size() == 3);
  CHECK(std::abs(t.mats[0](1, 0) - Complex(1.0)) == 0.0);
  CHECK(std::abs(t.mats[0](2, 1) - Complex(1.0)) == 0.0);
  CHECK(std::abs(t.mats[0](2, 0)) == 0.0);
}

TEST_CASE("two-variable truncation weights") {
  const auto t = symfock_truncation(2, 1);
  // basis: (0,0), (0,1), (1,0) in graded-lex order
  CHECK(t.size() == 3);
  // M_1 e_{(0,0)} = e_{(1,0)} with coefficient 1
  CVec e0 = CVec::Zero(3);
  e0(0) = 1.0;
  const CVec image = t.mats[0] * e0;
  CHECK(std::abs(image(2) - Complex(1.0)) == 0.0);
}

TEST_CASE("symmetric truncations are row contractive") {
  for (int d = 1; d <= 4; ++d)
    for (int N = 1; N <= (d <= 2 ? 8 : 5); ++N)
      CHECK(freepoly::row_norm(symfock_truncation(d, N)) <= 1.0 + 1e-12);
}

TEST_CASE("drury-type bound holds on the defining family") {
  Rng rng(419);
  for (int i = 0; i < 20; ++i) {
    const int d = rng.uniform_int(2, 3);
    const BallPoint x(random_interior_vector(rng, d, 0.8));
    BallPoint y(random_interior_vector(rng, d, 0.8));
    while (cball::distance(x, y) <= 1e-9)
      y = BallPoint(random_interior_vector(rng, d, 0.8));
    const auto pair = CommutingPair2x2::row_contractive(x, y, rng.complex_normal());
    const CPoly f = rand_cpoly(rng, d, 4, 6);
    const auto report = drury_check(f, pair, std::max(1, f.degree()) + 6);
    CHECK(report.pass);
  }
}

TEST_CASE("d-shift s-representation assembles the stated matrices") {
  const MobiusAutomorphism neg(-CMat::Identity(2, 2), BallPoint::zero(2));
  const auto pair = build_srep_d(neg, pt2(0.2, 0.0), Complex(0.1), Complex(0.3));
  // M_1 = [[-0.2, 0.1 * (-0.4)], [0, 0.2]]
  CHECK(std::abs(pair.generator_images[0](0, 0) - Complex(-0.2)) == 0.0);
  CHECK(std::abs(pair.generator_images[0](0, 1) - Complex(-0.04)) <= 1e-15);
  CHECK(std::abs(pair.generator_images[0](1, 1) - Complex(0.2)) == 0.0);
  CHECK(semicrossed::check_covariance_2x2(pair, neg) == 0.0);
  // the off-diagonal is proportional to theta1 - theta2, so the generator
  // images commute
  const CMat comm = pair.generator_images[0] * pair.generator_images[1] -
                    pair.generator_images[1] * pair.generator_images[0];
  CHECK(max_abs(comm) <= 1e-15);
}

TEST_CASE("d-shift isomorphism decision delegates to conjugacy") {
  const auto phi = cball::random_automorphism(31, 2, cball::AutomorphismType::Elliptic);
  CHECK(decide_isomorphism_d(phi, phi).verdict == semicrossed::IsoVerdict::Isomorphic);
  const MobiusAutomorphism id = MobiusAutomorphism::identity(2);
  const MobiusAutomorphism neg(-CMat::Identity(2, 2), BallPoint::zero(2));
  CHECK(decide_isomorphism_d(id, neg).verdict == semicrossed::IsoVerdict::NotIsomorphic);
}

TEST_CASE("ceval_point and tuple evaluation agree on scalars") {
  Rng rng(421);
  const CPoly f = rand_cpoly(rng, 2, 3, 5);
  const CVec z = random_interior_vector(rng, 2, 0.9);
  std::vector<CMat> mats;
  for (int i = 0; i < 2; ++i) {
    CMat m(1, 1);
    m(0, 0) = z(i);
    mats.push_back(m);
  }
  const CMat via_tuple = ceval_tuple(f, freepoly::MatrixTuple(mats));
  CHECK(std::abs(via_tuple(0, 0) - ceval_point(f, z)) <= 1e-12);
}
