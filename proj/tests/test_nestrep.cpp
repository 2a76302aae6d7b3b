#include <doctest.h>

#include <cmath>

#include "ncball/errors.hpp"
#include "ncball/nestrep.hpp"

using namespace ncball;
using namespace ncball::nestrep;
using freepoly::FreePolynomial;
using freepoly::Word;

namespace {

std::vector<BallPoint> zeros(int count, int n) {
  return std::vector<BallPoint>(count, BallPoint::zero(n));
}

std::vector<BallPoint> rand_points(Rng& rng, int count, int n, double max_norm) {
  std::vector<BallPoint> pts;
  for (int i = 0; i < count; ++i)
    pts.emplace_back(random_interior_vector(rng, n, max_norm));
  return pts;
}

}  // namespace

TEST_CASE("corner entry at the defining word and off it") {
  const auto rep = build_rho(zeros(3, 2), Word{{1, 2}}, 0.5);
  CHECK(std::abs(corner_entry(rep, Word{{1, 2}}) - Complex(0.25)) == 0.0);
  CHECK(std::abs(corner_entry(rep, Word{{2, 1}})) == 0.0);
  // with Z = 0, every longer word has corner 0 too (the analytic term
  // vanishes at the origin)
  for (const auto& v : freepoly::all_words(2, 4))
    if (v.length() > 2) CHECK(std::abs(corner_entry(rep, v)) == 0.0);
}

TEST_CASE("corner entries across random instances, exhaustively") {
  Rng rng(211);
  for (int i = 0; i < 10; ++i) {
    const int k = rng.uniform_int(2, 3);
    const auto z = rand_points(rng, k + 1, 2, 0.3);
    double rmax = 0.0;
    for (const auto& p : z) rmax = std::max(rmax, p.norm());
    const double delta = rng.uniform(rmax + 0.05, 0.9);
    std::vector<int> letters(k);
    for (int& l : letters) l = rng.uniform_int(1, 2);
    const Word w(letters);
    const auto rep = build_rho(z, w, delta);
    for (const auto& v : freepoly::all_words(2, k)) {
      const Complex entry = corner_entry(rep, v);
      if (v == w)
        CHECK(std::abs(entry - std::pow(1.0 - delta, k)) <= 1e-12);
      else
        CHECK(std::abs(entry) <= 1e-12);
    }
    // the analytic row-norm bound max|z| + (1 - delta)
    CHECK(freepoly::row_norm(rep.tuple()) <= rmax + (1.0 - delta) + 1e-12);
  }
}

TEST_CASE("build_rho validates its hypotheses") {
  CHECK_THROWS_AS(build_rho(zeros(3, 2), Word{{1}}, 0.5), Error);   // word too short
  CHECK_THROWS_AS(build_rho(zeros(4, 2), Word{{1, 2}}, 0.5), Error);  // wrong count
  CHECK_THROWS_AS(build_rho(zeros(3, 2), Word{{1, 2}}, 1.5), Error);  // delta
  Rng rng(7);
  auto far = rand_points(rng, 3, 2, 0.8);
  bool threw = false;
  try {
    build_rho(far, Word{{1, 2}}, 0.3);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::PointsNotInDeltaBall ||
            e.code() == ErrorCode::DeltaOutOfRange;
  }
  CHECK(threw);
}

TEST_CASE("surjectivity for distinct coordinates, failure at the origin") {
  Rng rng(223);
  // distinct random coordinates in a small ball
  std::vector<BallPoint> z;
  for (int i = 0; i < 3; ++i) {
    CVec v(2);
    v << Complex(0.05 + 0.07 * i, 0.02 * i), Complex(-0.04 - 0.05 * i, 0.06 + 0.01 * i);
    z.emplace_back(v);
  }
  const auto rep = build_rho(z, Word{{1, 2}}, 0.6);
  const auto report = check_surjective(rep);
  CHECK(report.surjective);
  CHECK(report.dimension == 6);

  const auto degenerate = check_surjective(build_rho(zeros(3, 2), Word{{1, 2}}, 0.5));
  CHECK_FALSE(degenerate.surjective);
  CHECK(degenerate.dimension < 6);

  // k = 3 distinct-coordinate case reaches dimension 10
  std::vector<BallPoint> z4;
  for (int i = 0; i < 4; ++i) {
    CVec v(2);
    v << Complex(0.03 + 0.06 * i, -0.01 - 0.02 * i), Complex(-0.02 + 0.05 * i, 0.07 - 0.015 * i);
    z4.emplace_back(v);
  }
  const auto rep4 = build_rho(z4, Word{{2, 1, 2}}, 0.6);
  CHECK(check_surjective(rep4).dimension == 10);
}

TEST_CASE("separation of a linear polynomial perturbs the first point") {
  const FreePolynomial a = FreePolynomial::generator(2, 1);
  const auto witness = separate(a, PointSequence{}, 1e-2, 5, 1000);
  CHECK(witness.row == 1);
  CHECK(witness.col == 1);
  CHECK(std::abs(witness.value) > 1e-12);
  // the witness value is theta_{z'_1}(A) = first coordinate of the sample
  CHECK(std::abs(witness.value - witness.perturbed_points[0][0]) <= 1e-14);
}

TEST_CASE("separation of a commutator lands on the corner") {
  FreePolynomial a = FreePolynomial::monomial(2, Word{{1, 2}}, 1.0) -
                     FreePolynomial::monomial(2, Word{{2, 1}}, 1.0);
  const auto witness = separate(a, PointSequence{}, 1e-2, 11, 1000);
  CHECK(witness.word == Word{{1, 2}});
  CHECK(witness.row == 1);
  CHECK(witness.col == 3);
  // value = (1-delta)^2 with delta near 1/2 at small perturbations
  CHECK(std::abs(witness.value - Complex(0.25)) <= 0.05);
}

TEST_CASE("separation of the unit is immediate") {
  const auto witness = separate(FreePolynomial::unit(2), PointSequence{}, 1e-2, 3, 10);
  CHECK(witness.row == 1);
  CHECK(witness.col == 1);
  CHECK(std::abs(witness.value - Complex(1.0)) <= 1e-2);
}

TEST_CASE("separation refuses the zero polynomial") {
  CHECK_THROWS_AS(separate(FreePolynomial(2), PointSequence{}, 1e-2, 1, 10), Error);
}

TEST_CASE("rep_eval kills U terms") {
  const auto rep = build_rho(zeros(3, 2), Word{{1, 2}}, 0.5);

  semicrossed::SemicrossedElement u_only(2);
  u_only.set_coefficient(1, FreePolynomial::generator(2, 1));
  CHECK(max_abs(rep_eval(rep, u_only)) == 0.0);

  semicrossed::SemicrossedElement plain(2);
  plain.set_coefficient(0, FreePolynomial::monomial(2, Word{{1, 2}}, 1.0));
  CHECK(std::abs(rep_eval(rep, plain)(0, 2) - Complex(0.25)) == 0.0);

  semicrossed::SemicrossedElement mixed(2);
  mixed.set_coefficient(0, FreePolynomial::unit(2));
  mixed.set_coefficient(1, FreePolynomial::generator(2, 2));
  CHECK(max_abs(CMat(rep_eval(rep, mixed) - CMat::Identity(3, 3))) == 0.0);
}

TEST_CASE("point sequence distance is the shared-prefix sup") {
  Rng rng(229);
  const auto a = PointSequence(rand_points(rng, 4, 2, 0.5));
  auto shifted = a.points;
  CVec v = shifted[2].coords();
  v(0) += 0.125;
  shifted[2] = BallPoint(v);
  shifted.pop_back();
  const auto b = PointSequence(shifted);
  CHECK(std::fabs(distance(a, b) - 0.125) <= 1e-12);
}
