#include "ncball/dshift.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ncball/errors.hpp"

namespace ncball::dshift {

CommutingPair2x2::CommutingPair2x2(BallPoint x_, BallPoint y_, Complex t_)
    : x(std::move(x_)), y(std::move(y_)), t(t_) {
  require(x.dim() == y.dim(), ErrorCode::DimensionMismatch,
          "pair points of different dimension");
  require(x.interior() && y.interior(), ErrorCode::InvalidArgument,
          "pair points must be interior");
  require(cball::distance(x, y) > 1e-12, ErrorCode::InvalidArgument,
          "pair points must be distinct");
}

CMat CommutingPair2x2::matrix(int j) const {
  require(j >= 1 && j <= vars(), ErrorCode::InvalidArgument,
          "variable index out of range");
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = x[j - 1];
  m(0, 1) = t * (x[j - 1] - y[j - 1]);
  m(1, 1) = y[j - 1];
  return m;
}

freepoly::MatrixTuple CommutingPair2x2::tuple() const {
  std::vector<CMat> mats;
  for (int j = 1; j <= vars(); ++j) mats.push_back(matrix(j));
  return freepoly::MatrixTuple(std::move(mats));
}

double CommutingPair2x2::row_norm() const { return freepoly::row_norm(tuple()); }

CommutingPair2x2 CommutingPair2x2::row_contractive(BallPoint x, BallPoint y,
                                                   Complex t) {
  CommutingPair2x2 pair(std::move(x), std::move(y), t);
  if (pair.row_norm() <= 1.0 - 1e-6) return pair;
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 80; ++iter) {
    const double mid = (lo + hi) / 2.0;
    pair.t = mid * t;
    (pair.row_norm() <= 1.0 - 1e-6 ? lo : hi) = mid;
  }
  pair.t = lo * t;
  return pair;
}

CMat ceval_2x2(const CPoly& f, const CommutingPair2x2& pair) {
  require(f.vars() == pair.vars(), ErrorCode::DimensionMismatch,
          "polynomial and pair dimensions differ");
  const Complex fx = ceval_point(f, pair.x.coords());
  const Complex fy = ceval_point(f, pair.y.coords());
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = fx;
  m(0, 1) = pair.t * (fx - fy);
  m(1, 1) = fy;
  return m;
}

std::vector<MultiIndex> all_multi_indices(int d, int N) {
  std::vector<MultiIndex> out;
  std::vector<int> current(d, 0);
  // enumerate all exponent vectors with sum <= N, then graded-lex sort
  while (true) {
    int total = 0;
    for (int e : current) total += e;
    if (total <= N) out.emplace_back(current);
    int pos = d - 1;
    while (pos >= 0 && current[pos] == N) {
      current[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++current[pos];
  }
  std::sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
    return GradedIndexLess{}(a, b);
  });
  return out;
}

freepoly::MatrixTuple symfock_truncation(int d, int N) {
  require(d >= 1 && N >= 1, ErrorCode::InvalidArgument, "need d >= 1 and N >= 1");
  const auto basis = all_multi_indices(d, N);
  require(static_cast<long>(basis.size()) <= freepoly::kFockBasisCap,
          ErrorCode::SizeOverflow, "symmetric Fock truncation exceeds the basis cap");
  std::map<MultiIndex, int, GradedIndexLess> index;
  for (std::size_t i = 0; i < basis.size(); ++i)
    index.emplace(basis[i], static_cast<int>(i));
  const int k = static_cast<int>(basis.size());
  std::vector<CMat> mats(d, CMat::Zero(k, k));
  for (int col = 0; col < k; ++col) {
    const MultiIndex& alpha = basis[col];
    const int total = alpha.order();
    if (total >= N) continue;
    for (int i = 0; i < d; ++i) {
      MultiIndex next = alpha;
      next.exps[i] += 1;
      // norm ratio |z^{alpha+e_i}| / |z^alpha| from |z^alpha|^2 = alpha!/|alpha|!
      const double weight =
          std::sqrt(static_cast<double>(alpha.exps[i] + 1) / (total + 1));
      mats[i](index.at(next), col) = weight;
    }
  }
  return freepoly::MatrixTuple(std::move(mats));
}

CMat ceval_tuple(const CPoly& f, const freepoly::MatrixTuple& t) {
  require(t.n() == f.vars(), ErrorCode::DimensionMismatch,
          "tuple length differs from variable count");
  const int k = t.size();
  // cache powers per variable
  std::vector<std::vector<CMat>> powers(f.vars());
  for (int i = 0; i < f.vars(); ++i) powers[i].push_back(CMat::Identity(k, k));
  auto power = [&](int i, int e) -> const CMat& {
    while (static_cast<int>(powers[i].size()) <= e)
      powers[i].push_back(powers[i].back() * t.mats[i]);
    return powers[i][e];
  };
  CMat out = CMat::Zero(k, k);
  for (const auto& [alpha, c] : f.terms()) {
    CMat prod = CMat::Identity(k, k);
    for (int i = 0; i < f.vars(); ++i)
      if (alpha.exps[i] > 0) prod = prod * power(i, alpha.exps[i]);
    out += c * prod;
  }
  return out;
}

double symfock_poly_norm(const CPoly& f, int N) {
  require(N >= std::max(1, f.degree()), ErrorCode::InvalidArgument,
          "truncation must accommodate the polynomial degree");
  return operator_norm(ceval_tuple(f, symfock_truncation(f.vars(), N)));
}

DruryReport drury_check(const CPoly& f, const CommutingPair2x2& pair, int N) {
  require(f.vars() == pair.vars(), ErrorCode::DimensionMismatch,
          "polynomial and pair dimensions differ");
  require(pair.row_norm() <= 1.0 + 1e-12, ErrorCode::NotRowContractive,
          "pair is not row contractive");
  DruryReport report;
  report.lhs = operator_norm(ceval_2x2(f, pair));
  report.rhs = symfock_poly_norm(f, N);
  report.pass = report.lhs <= report.rhs + 1e-6;
  return report;
}

semicrossed::CovariantPair build_srep_d(const MobiusAutomorphism& phi,
                                        const BallPoint& z, Complex t, Complex c) {
  const int d = phi.dim();
  require(z.dim() == d, ErrorCode::DimensionMismatch,
          "point dimension differs from the automorphism");
  require(std::abs(c) > 0.0, ErrorCode::ZeroC, "need c != 0");
  const BallPoint theta1 = cball::apply(phi, z);
  require(cball::distance(theta1, z) > 1e-8, ErrorCode::PointIsFixed,
          "z must not be fixed by the action");
  // commuting constraint: b = t (theta1 - z)
  const CVec b = t * (theta1.coords() - z.coords());
  return semicrossed::build_srep(phi, z, b, c);
}

semicrossed::IsomorphismReport decide_isomorphism_d(const MobiusAutomorphism& phi1,
                                                    const MobiusAutomorphism& phi2) {
  return semicrossed::decide_isomorphism(phi1, phi2);
}

}  // namespace ncball::dshift
