#pragma once

#include "ncball/cpoly.hpp"
#include "ncball/semicrossed.hpp"

namespace ncball::dshift {

using cball::BallPoint;
using cball::MobiusAutomorphism;

/// Generic commuting 2x2 upper-triangular tuple: commutativity forces the
/// off-diagonal to be proportional to x - y, so the family is parameterized
/// by two distinct ball points and one scalar:
///   M_j = [[x_j, t (x_j - y_j)], [0, y_j]].
struct CommutingPair2x2 {
  BallPoint x;
  BallPoint y;
  Complex t;

  CommutingPair2x2(BallPoint x_, BallPoint y_, Complex t_);

  int vars() const { return x.dim(); }
  CMat matrix(int j) const;  // 1-based variable index
  freepoly::MatrixTuple tuple() const;
  double row_norm() const;

  /// Same (x, y) with t shrunk until the tuple is strictly row contractive.
  static CommutingPair2x2 row_contractive(BallPoint x, BallPoint y, Complex t);
};

/// Upper-triangular functional calculus by divided differences:
///   f |-> [[f(x), t (f(x) - f(y))], [0, f(y)]].
CMat ceval_2x2(const CPoly& f, const CommutingPair2x2& pair);

/// Compressed d-shift: multipliers by the coordinates on the span of the
/// normalized monomials of order <= N (|z^alpha|^2 = alpha!/|alpha|!).
freepoly::MatrixTuple symfock_truncation(int d, int N);

/// Operator norm of f on the truncated d-shift.
double symfock_poly_norm(const CPoly& f, int N);

/// Evaluation of a commutative polynomial on a commuting tuple.
CMat ceval_tuple(const CPoly& f, const freepoly::MatrixTuple& t);

struct DruryReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// Commuting analogue of the von Neumann check:
/// |f(pair)| <= |f on symfock_truncation(d, N)| + 1e-6.
DruryReport drury_check(const CPoly& f, const CommutingPair2x2& pair, int N);

/// d-shift s-representation: the commuting constraint pins the off-diagonal
/// vector to t (phi-hat(z) - z).
semicrossed::CovariantPair build_srep_d(const MobiusAutomorphism& phi,
                                        const BallPoint& z, Complex t, Complex c);

/// Same decision as the free case: the character space and automorphism
/// group coincide, so conjugacy of the symbols is again the invariant.
semicrossed::IsomorphismReport decide_isomorphism_d(const MobiusAutomorphism& phi1,
                                                    const MobiusAutomorphism& phi2);

/// Multi-indices with |alpha| <= N in graded-lex order.
std::vector<MultiIndex> all_multi_indices(int d, int N);

}  // namespace ncball::dshift
