#pragma once

#include <vector>

#include "ncball/cball.hpp"
#include "ncball/freepoly.hpp"
#include "ncball/semicrossed_element.hpp"

namespace ncball::nestrep {

using cball::BallPoint;
using freepoly::FreePolynomial;
using freepoly::Word;

/// Finite prefix of a point sequence in the open ball; the distance is the
/// sup over shared indices.
struct PointSequence {
  std::vector<BallPoint> points;

  PointSequence() = default;
  explicit PointSequence(std::vector<BallPoint> pts);
};

double distance(const PointSequence& a, const PointSequence& b);

/// Nest representation with the diagonal specified in advance: the j-th
/// generator goes to diag(z_{ij}) + (1-delta) * sum_{l_i = j} E_{i,i+1},
/// and U goes to the zero matrix.
struct NestRepresentation {
  int n = 0;
  int size = 0;  // k+1
  std::vector<CMat> generator_images;
  CMat u_image;
  std::vector<BallPoint> diagonal_points;
  double delta = 0.0;
  Word word;  // the defining word, length k

  freepoly::MatrixTuple tuple() const { return freepoly::MatrixTuple(generator_images); }
};

NestRepresentation build_rho(const std::vector<BallPoint>& z, const Word& w,
                             double delta);

/// (1, k+1) entry of the evaluated word monomial.
Complex corner_entry(const NestRepresentation& rep, const Word& v);

struct SurjectivityReport {
  bool surjective = false;
  int dimension = 0;
};

/// Dimension of the unital algebra generated by the generator images;
/// surjective onto the upper triangulars iff it reaches (k+1)(k+2)/2.
SurjectivityReport check_surjective(const NestRepresentation& rep);

struct SeparationWitness {
  Word word;
  std::vector<BallPoint> perturbed_points;
  NestRepresentation rep;
  int row = 0;  // 1-based
  int col = 0;  // 1-based
  Complex value;
};

/// Finds a nest representation with rho(A) != 0 by perturbing the base
/// sequence; see the module docs for the two branches (diagonal witness for
/// nonzero abelianization, corner witness through the minimal word
/// otherwise).
SeparationWitness separate(const FreePolynomial& a, const PointSequence& z,
                           double eps, std::uint64_t seed, int max_tries = 1000);

/// Evaluation of a semicrossed element; u_image = 0 kills every U^m term
/// with m >= 1, so only A_0 survives.
CMat rep_eval(const NestRepresentation& rep,
              const semicrossed::SemicrossedElement& x);

}  // namespace ncball::nestrep
