#include <doctest.h>

#include <cmath>

#include "ncball/cball.hpp"
#include "ncball/errors.hpp"

using namespace ncball;
using namespace ncball::cball;

namespace {

BallPoint pt1(Complex z) {
  CVec v(1);
  v << z;
  return BallPoint(v);
}

BallPoint pt2(Complex a, Complex b) {
  CVec v(2);
  v << a, b;
  return BallPoint(v);
}

}  // namespace

TEST_CASE("involution at the origin is the antipode") {
  const auto phi = involution(BallPoint::zero(2));
  const auto image = apply(phi, pt2(0.3, Complex(0.0, 0.4)));
  CHECK(std::abs(image[0] - Complex(-0.3)) <= 1e-15);
  CHECK(std::abs(image[1] - Complex(0.0, -0.4)) <= 1e-15);
}

TEST_CASE("one variable involution evaluates rationally") {
  // (a - z)/(1 - conj(a) z) at a = 1/2, z = 1/4 gives 2/7
  const auto phi = involution(pt1(0.5));
  const auto image = apply(phi, pt1(0.25));
  CHECK(std::abs(image[0] - Complex(2.0 / 7.0)) <= 1e-15);
}

TEST_CASE("involution swaps the center and the origin") {
  const BallPoint a = pt2(0.6, 0.0);
  const auto phi = involution(a);
  CHECK(apply(phi, a).norm() <= 1e-15);
  CHECK(distance(apply(phi, BallPoint::zero(2)), a) <= 1e-15);
}

TEST_CASE("involution rejects non-interior centers") {
  CVec v(2);
  v << 1.0, 0.0;
  CHECK_THROWS_AS(involution(BallPoint(v)), Error);
  try {
    involution(BallPoint(v));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CenterNotInterior);
  }
}

TEST_CASE("apply preserves interior and sphere") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const int n = rng.uniform_int(1, 4);
    const auto phi = random_automorphism(rng.next_u64(), n);
    const BallPoint z(random_interior_vector(rng, n, 0.97));
    CHECK(apply(phi, z).norm() < 1.0);
    CVec s(n);
    for (int j = 0; j < n; ++j) s(j) = rng.complex_normal();
    s /= s.norm();
    CHECK(std::fabs(apply(phi, BallPoint(s)).norm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("unitary automorphism acts linearly") {
  CMat u = CMat::Zero(2, 2);
  u(0, 0) = Complex(0.0, 1.0);
  u(1, 1) = 1.0;
  const MobiusAutomorphism phi(u, BallPoint::zero(2));
  const auto image = apply(phi, pt2(0.3, 0.4));
  CHECK(std::abs(image[0] - Complex(0.0, 0.3)) <= 1e-15);
  CHECK(std::abs(image[1] - Complex(0.4)) <= 1e-15);
}

TEST_CASE("compose with the identity and with itself") {
  const auto phi = random_automorphism(3, 2);
  const auto id = MobiusAutomorphism::identity(2);
  const auto same = compose(phi, id);
  Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    const BallPoint z(random_interior_vector(rng, 2, 0.9));
    CHECK(distance(apply(same, z), apply(phi, z)) <= 1e-12);
  }
  const BallPoint a = pt2(0.25, Complex(0.0, 0.35));
  const auto round = compose(involution(a), involution(a));
  CHECK(is_identity(round));
}

TEST_CASE("composition evaluates like the chain") {
  // n = 1: (phi_{1/2} o phi_{1/4})(0) = phi_{1/2}(1/4) = 2/7
  const auto chi = compose(involution(pt1(0.5)), involution(pt1(0.25)));
  const auto at_zero = apply(chi, pt1(0.0));
  CHECK(std::abs(at_zero[0] - Complex(2.0 / 7.0)) <= 1e-12);
}

TEST_CASE("inverse is a group inverse") {
  const auto phi = random_automorphism(17, 3);
  CHECK(is_identity(compose(phi, inverse(phi))));
  CHECK(is_identity(compose(inverse(phi), phi)));
}

TEST_CASE("compose rejects dimension mismatch") {
  CHECK_THROWS_AS(compose(random_automorphism(1, 2), random_automorphism(1, 3)), Error);
}

TEST_CASE("lift of the identity and of a unitary") {
  const auto id_lift = lift(MobiusAutomorphism::identity(3));
  CHECK(max_abs(CMat(id_lift.matrix - CMat::Identity(4, 4))) <= 1e-12);

  Rng rng(23);
  const CMat u = random_unitary(rng, 2);
  const auto l = lift(MobiusAutomorphism(u, BallPoint::zero(2)));
  CHECK(max_abs(CMat(l.matrix.topLeftCorner(2, 2) - u)) <= 1e-12);
  CHECK(std::abs(l.matrix(2, 2) - Complex(1.0)) <= 1e-12);
}

TEST_CASE("lift chart action reproduces apply") {
  Rng rng(29);
  for (int i = 0; i < 10; ++i) {
    const auto phi = random_automorphism(rng.next_u64(), 2);
    const auto l = lift(phi);
    CHECK(l.form_residual() <= 1e-10);
    const BallPoint z(random_interior_vector(rng, 2, 0.9));
    CHECK((l.chart_apply(z.coords()) - apply(phi, z).coords()).norm() <= 1e-10);
  }
}

TEST_CASE("fixed points of the identity fill the ball") {
  const auto fp = fixed_points(MobiusAutomorphism::identity(3));
  CHECK(fp.type == AutomorphismType::Identity);
  REQUIRE(fp.interior_set.has_value());
  CHECK(fp.interior_set->dim() == 3);
  CHECK(fp.boundary_points.empty());
}

TEST_CASE("diagonal rotation fixes an affine disk") {
  CMat u = CMat::Zero(2, 2);
  u(0, 0) = std::polar(1.0, 3.14159265358979323846 / 3.0);
  u(1, 1) = 1.0;
  const MobiusAutomorphism phi(u, BallPoint::zero(2));
  const auto fp = fixed_points(phi);
  CHECK(fp.type == AutomorphismType::Elliptic);
  REQUIRE(fp.interior_set.has_value());
  CHECK(fp.interior_set->dim() == 1);
  CHECK(fp.interior_set->base.norm() <= 1e-10);
  // direction is the second coordinate axis
  CHECK(std::abs(std::abs(fp.interior_set->directions(1, 0)) - 1.0) <= 1e-10);
  CHECK(std::abs(fp.interior_set->directions(0, 0)) <= 1e-10);
}

TEST_CASE("disk hyperbolic map fixes +1 and -1") {
  // phi(z) = (z + 1/2)/(1 + z/2) in canonical form: unitary -1, center -1/2
  CMat u(1, 1);
  u(0, 0) = -1.0;
  const MobiusAutomorphism phi(u, pt1(-0.5));
  const auto check = apply(phi, pt1(0.3));
  CHECK(std::abs(check[0] - Complex((0.3 + 0.5) / (1.0 + 0.15))) <= 1e-14);

  const auto fp = fixed_points(phi);
  CHECK(fp.type == AutomorphismType::Hyperbolic);
  REQUIRE(fp.boundary_points.size() == 2);
  double lo = 2.0, hi = -2.0;
  for (const auto& p : fp.boundary_points) {
    lo = std::min(lo, p[0].real());
    hi = std::max(hi, p[0].real());
    CHECK(std::abs(p[0].imag()) <= 1e-9);
  }
  CHECK(std::abs(lo + 1.0) <= 1e-9);
  CHECK(std::abs(hi - 1.0) <= 1e-9);
}

TEST_CASE("involution center pair is elliptic with the known disk fixed point") {
  // in one variable the interior fixed point of phi_a is (1 - s_a)/conj(a)
  const double a = 0.5;
  const auto phi = involution(pt1(a));
  const auto fp = fixed_points(phi);
  CHECK(fp.type == AutomorphismType::Elliptic);
  REQUIRE(fp.interior_set.has_value());
  const double s = std::sqrt(1.0 - a * a);
  const double expected = (1.0 - s) / a;
  CHECK(std::abs(fp.interior_set->base[0] - Complex(expected)) <= 1e-10);
}

TEST_CASE("classification follows the hint") {
  Rng rng(31);
  const AutomorphismType kinds[] = {
      AutomorphismType::Identity, AutomorphismType::Elliptic,
      AutomorphismType::Parabolic, AutomorphismType::Hyperbolic};
  for (int n = 1; n <= 3; ++n)
    for (const auto kind : kinds)
      CHECK(classify(random_automorphism(rng.next_u64(), n, kind)) == kind);
}

TEST_CASE("random automorphisms are reproducible and valid") {
  const auto a = random_automorphism(0, 2);
  const auto b = random_automorphism(0, 2);
  CHECK(max_abs(CMat(a.unitary_part() - b.unitary_part())) == 0.0);
  CHECK(distance(a.center(), b.center()) == 0.0);
  CHECK(unitary_defect(a.unitary_part()) <= 1e-10);
  CHECK(a.center().norm() < 1.0);
}

TEST_CASE("self conjugacy returns the identity certificate") {
  const auto phi = random_automorphism(41, 2);
  const auto v = are_conjugate(phi, phi);
  CHECK(v.verdict == ConjugacyOutcome::Conjugate);
  REQUIRE(v.certificate.has_value());
  CHECK(is_identity(*v.certificate));
}

TEST_CASE("distinct unitary spectra are refused") {
  CMat u1 = CMat::Zero(2, 2);
  u1(0, 0) = Complex(0.0, 1.0);
  u1(1, 1) = 1.0;
  CMat u2 = CMat::Zero(2, 2);
  u2(0, 0) = -1.0;
  u2(1, 1) = 1.0;
  const MobiusAutomorphism phi1(u1, BallPoint::zero(2));
  const MobiusAutomorphism phi2(u2, BallPoint::zero(2));
  const auto v = are_conjugate(phi1, phi2);
  CHECK(v.verdict == ConjugacyOutcome::NotConjugate);
  REQUIRE(v.mismatch.has_value());
  CHECK(v.mismatch->invariant == "derivative-spectrum");
  CHECK(v.mismatch->gap > 1e-6);
}

TEST_CASE("constructed conjugates come back certified") {
  Rng rng(47);
  const AutomorphismType kinds[] = {AutomorphismType::Elliptic,
                                    AutomorphismType::Hyperbolic};
  for (int i = 0; i < 12; ++i) {
    const int n = 1 + i % 3;
    const auto phi = random_automorphism(rng.next_u64(), n, kinds[i % 2]);
    const auto gamma = random_automorphism(rng.next_u64(), n);
    const auto conj = compose(gamma, compose(phi, inverse(gamma)));
    const auto v = are_conjugate(phi, conj);
    CHECK(v.verdict == ConjugacyOutcome::Conjugate);
    REQUIRE(v.certificate.has_value());
    CHECK(conjugation_residual(*v.certificate, phi, conj) <= 1e-8);
  }
}

TEST_CASE("type mismatch is a refusal witness") {
  const auto elliptic = random_automorphism(3, 2, AutomorphismType::Elliptic);
  const auto hyperbolic = random_automorphism(3, 2, AutomorphismType::Hyperbolic);
  const auto v = are_conjugate(elliptic, hyperbolic);
  CHECK(v.verdict == ConjugacyOutcome::NotConjugate);
  REQUIRE(v.mismatch.has_value());
  CHECK(v.mismatch->invariant == "type");
}

TEST_CASE("hyperbolic translation lengths separate") {
  // boosts with different ratios have different projective spectra
  auto boost = [](double r) {
    CMat m = CMat::Identity(3, 3);
    m(0, 0) = m(2, 2) = (r + 1.0 / r) / 2.0;
    m(0, 2) = m(2, 0) = (r - 1.0 / r) / 2.0;
    return automorphism_from_lift(m);
  };
  const auto v = are_conjugate(boost(1.5), boost(2.5));
  CHECK(v.verdict == ConjugacyOutcome::NotConjugate);
  REQUIRE(v.mismatch.has_value());
  CHECK(v.mismatch->invariant == "lift-spectrum");
}

TEST_CASE("parabolic pairs with equal invariants stay inconclusive") {
  const auto p1 = random_automorphism(5, 2, AutomorphismType::Parabolic);
  const auto gamma = random_automorphism(6, 2);
  const auto p2 = compose(gamma, compose(p1, inverse(gamma)));
  const auto v = are_conjugate(p1, p2);
  // soundness first: never a false NotConjugate on a genuine conjugate pair
  CHECK(v.verdict != ConjugacyOutcome::NotConjugate);
}

TEST_CASE("parabolic against parabolic with different block structure") {
  // direct parabolic (2x2 Jordan at 1) vs one with an extra rotation block
  const auto p1 = random_automorphism(8, 1, AutomorphismType::Parabolic);
  const auto p2 = random_automorphism(9, 1, AutomorphismType::Parabolic);
  const auto v = are_conjugate(p1, p2);
  CHECK(v.verdict != ConjugacyOutcome::Conjugate);  // no certificate is attempted
}

TEST_CASE("automorphism from lift round-trips") {
  Rng rng(53);
  for (int i = 0; i < 8; ++i) {
    const auto phi = random_automorphism(rng.next_u64(), 3);
    const auto back = automorphism_from_lift(lift(phi).matrix);
    const BallPoint z(random_interior_vector(rng, 3, 0.9));
    CHECK(distance(apply(back, z), apply(phi, z)) <= 1e-9);
  }
}
