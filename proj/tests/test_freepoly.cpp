#include <doctest.h>

#include <cmath>

#include "ncball/errors.hpp"
#include "ncball/freepoly.hpp"

using namespace ncball;
using namespace ncball::freepoly;

namespace {

cball::BallPoint pt2(Complex a, Complex b) {
  CVec v(2);
  v << a, b;
  return cball::BallPoint(v);
}

FreePolynomial rand_poly(Rng& rng, int n, int deg, int terms) {
  FreePolynomial p(n);
  for (int t = 0; t < terms; ++t) {
    const int len = rng.uniform_int(0, deg);
    std::vector<int> w(len);
    for (int& l : w) l = rng.uniform_int(1, n);
    p.add_term(Word(std::move(w)), rng.complex_normal());
  }
  return p;
}

}  // namespace

TEST_CASE("character evaluation on sums, products of coordinates, unit") {
  FreePolynomial p = FreePolynomial::generator(2, 1) + FreePolynomial::generator(2, 2);
  CHECK(std::abs(eval_point(p, pt2(0.3, 0.4)) - Complex(0.7)) <= 1e-15);

  const FreePolynomial m = FreePolynomial::monomial(2, Word{{1, 2}}, 1.0);
  CHECK(std::abs(eval_point(m, pt2(0.5, 0.5)) - Complex(0.25)) <= 1e-15);

  CHECK(std::abs(eval_point(FreePolynomial::unit(2), pt2(0.1, 0.9)) - Complex(1.0)) <=
        1e-15);
}

TEST_CASE("character multiplicativity") {
  Rng rng(101);
  for (int i = 0; i < 50; ++i) {
    const int n = rng.uniform_int(1, 3);
    const FreePolynomial p = rand_poly(rng, n, 3, 5);
    const FreePolynomial q = rand_poly(rng, n, 3, 5);
    const cball::BallPoint z(random_interior_vector(rng, n, 0.9));
    const Complex lhs = eval_point(p * q, z);
    const Complex rhs = eval_point(p, z) * eval_point(q, z);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("tuple evaluation takes generators to the tuple") {
  Rng rng(103);
  std::vector<CMat> mats;
  for (int i = 0; i < 2; ++i) {
    CMat m(3, 3);
    for (int c = 0; c < 3; ++c)
      for (int r = 0; r < 3; ++r) m(r, c) = rng.complex_normal();
    mats.push_back(m);
  }
  const MatrixTuple t(mats);
  CHECK(max_abs(CMat(eval_tuple(FreePolynomial::generator(2, 1), t) - t.mats[0])) ==
        0.0);
  // word 12 maps to T1 T2, leftmost letter leftmost
  const CMat prod = eval_tuple(FreePolynomial::monomial(2, Word{{1, 2}}, 1.0), t);
  CHECK(max_abs(CMat(prod - t.mats[0] * t.mats[1])) <= 1e-13);
  CHECK(max_abs(CMat(eval_tuple(FreePolynomial::unit(2), t) - CMat::Identity(3, 3))) ==
        0.0);
}

TEST_CASE("tuple evaluation is multiplicative") {
  Rng rng(107);
  for (int i = 0; i < 20; ++i) {
    const int n = rng.uniform_int(1, 3);
    const int k = rng.uniform_int(1, 5);
    std::vector<CMat> mats;
    for (int j = 0; j < n; ++j) {
      CMat m(k, k);
      for (int c = 0; c < k; ++c)
        for (int r = 0; r < k; ++r) m(r, c) = 0.4 * rng.complex_normal();
      mats.push_back(m);
    }
    const MatrixTuple t(mats);
    const FreePolynomial p = rand_poly(rng, n, 3, 4);
    const FreePolynomial q = rand_poly(rng, n, 3, 4);
    const CMat lhs = eval_tuple(p * q, t);
    const CMat rhs = eval_tuple(p, t) * eval_tuple(q, t);
    CHECK(max_abs(CMat(lhs - rhs)) <= 1e-10);
  }
}

TEST_CASE("abelianization kills commutators and keeps monomials") {
  const FreePolynomial comm = FreePolynomial::monomial(2, Word{{1, 2}}, 1.0) -
                              FreePolynomial::monomial(2, Word{{2, 1}}, 1.0);
  CHECK(abelianize(comm).is_zero());

  const auto mono = abelianize(FreePolynomial::monomial(2, Word{{1, 2}}, 1.0));
  CHECK(mono.terms().size() == 1);
  CHECK(mono.terms().begin()->first.exps == std::vector<int>{1, 1});
}

TEST_CASE("abelianization commutes with point evaluation") {
  Rng rng(109);
  for (int i = 0; i < 200; ++i) {
    const int n = rng.uniform_int(1, 3);
    const FreePolynomial p = rand_poly(rng, n, 4, 6);
    const cball::BallPoint z(random_interior_vector(rng, n, 0.9));
    const Complex direct = eval_point(p, z);
    const Complex through = dshift::ceval_point(abelianize(p), z.coords());
    CHECK(std::abs(direct - through) <= 1e-12);
  }
}

TEST_CASE("minimal word with the graded-lex tie break") {
  FreePolynomial p(2);
  p.add_term(Word{{1, 2}}, 1.0);
  p.add_term(Word{{1, 1, 2}}, 1.0);
  CHECK(minimal_word(p) == Word{{1, 2}});

  FreePolynomial q(2);
  q.add_term(Word{{2, 1}}, 1.0);
  q.add_term(Word{{1, 2}}, 1.0);
  CHECK(minimal_word(q) == Word{{1, 2}});

  FreePolynomial r = FreePolynomial::unit(2) + FreePolynomial::generator(2, 1);
  CHECK(minimal_word(r) == Word{});

  CHECK_THROWS_AS(minimal_word(FreePolynomial(2)), Error);
}

TEST_CASE("row norm basics and the gram identity") {
  std::vector<CMat> zero_mats(3, CMat::Zero(2, 2));
  CHECK(row_norm(MatrixTuple(zero_mats)) == 0.0);

  std::vector<CMat> scalars;
  CMat a(1, 1), b(1, 1);
  a << 0.6;
  b << 0.8;
  scalars = {a, b};
  CHECK(std::fabs(row_norm(MatrixTuple(scalars)) - 1.0) <= 1e-12);

  Rng rng(113);
  for (int i = 0; i < 20; ++i) {
    const int n = rng.uniform_int(1, 3);
    const int k = rng.uniform_int(1, 4);
    std::vector<CMat> mats;
    for (int j = 0; j < n; ++j) {
      CMat m(k, k);
      for (int c = 0; c < k; ++c)
        for (int r = 0; r < k; ++r) m(r, c) = rng.complex_normal();
      mats.push_back(m);
    }
    const MatrixTuple t(mats);
    // |row|^2 equals the top eigenvalue of sum T_i T_i*
    CMat gram = CMat::Zero(k, k);
    for (const auto& m : t.mats) gram += m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<CMat> es(gram);
    const double expected = std::sqrt(es.eigenvalues().maxCoeff());
    CHECK(std::fabs(row_norm(t) - expected) <= 1e-10);
  }
}

TEST_CASE("Fock truncation small cases") {
  const auto t = fock_truncation(2, 1);
  CHECK(t.size() == 3);  // words: empty, 1, 2
  // S_1 xi_empty = xi_1 and S_1 xi_1 = 0
  CVec e0 = CVec::Zero(3);
  e0(0) = 1.0;
  const CVec image = t.mats[0] * e0;
  CHECK(std::abs(image(1) - Complex(1.0)) == 0.0);
  CVec e1 = CVec::Zero(3);
  e1(1) = 1.0;
  CHECK((t.mats[0] * e1).norm() == 0.0);
  CHECK(std::fabs(row_norm(t) - 1.0) <= 1e-12);
}

TEST_CASE("Fock truncation respects the size cap") {
  CHECK_THROWS_AS(fock_truncation(2, 30), Error);
  try {
    fock_truncation(2, 30);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SizeOverflow);
  }
}

TEST_CASE("sparse Fock norm agrees with the dense operator norm") {
  Rng rng(127);
  for (int i = 0; i < 10; ++i) {
    const int n = rng.uniform_int(1, 2);
    const FreePolynomial p = rand_poly(rng, n, 3, 5);
    const int N = std::max(1, p.degree()) + 2;
    const double sparse = fock_poly_norm(p, N);
    const double dense = operator_norm(eval_tuple(p, fock_truncation(n, N)));
    CHECK(std::fabs(sparse - dense) <= 1e-8 * std::max(1.0, dense));
  }
}

TEST_CASE("von Neumann check trivial cases") {
  // p = S1, T = (0.6 I, 0): lhs 0.6 <= rhs 1.0
  std::vector<CMat> mats = {0.6 * CMat::Identity(2, 2), CMat::Zero(2, 2)};
  const auto report =
      von_neumann_check(FreePolynomial::generator(2, 1), MatrixTuple(mats), 7);
  CHECK(report.pass);
  CHECK(std::fabs(report.lhs - 0.6) <= 1e-12);
  CHECK(std::fabs(report.rhs - 1.0) <= 1e-9);

  const auto unit_report =
      von_neumann_check(FreePolynomial::unit(2), MatrixTuple(mats), 3);
  CHECK(unit_report.pass);
  CHECK(std::fabs(unit_report.lhs - 1.0) <= 1e-12);
  CHECK(std::fabs(unit_report.rhs - 1.0) <= 1e-9);
}

TEST_CASE("von Neumann check rejects expansive tuples") {
  std::vector<CMat> mats = {1.2 * CMat::Identity(2, 2), CMat::Zero(2, 2)};
  CHECK_THROWS_AS(
      von_neumann_check(FreePolynomial::generator(2, 1), MatrixTuple(mats), 6),
      Error);
}

TEST_CASE("zero coefficients are never stored") {
  FreePolynomial p(2);
  p.add_term(Word{{1}}, 1.0);
  p.add_term(Word{{1}}, -1.0);
  CHECK(p.is_zero());
  p.add_term(Word{}, 0.0);
  CHECK(p.is_zero());
}
