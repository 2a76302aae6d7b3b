#include "ncball/freepoly.hpp"

#include <algorithm>
#include <cmath>

#include "ncball/errors.hpp"

namespace ncball::freepoly {

std::vector<Word> all_words(int n, int max_len) {
  std::vector<Word> out;
  out.emplace_back();
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (int a = 1; a <= n; ++a) {
        Word w = out[i];
        w.letters.push_back(a);
        out.push_back(std::move(w));
      }
    }
    level_begin = level_end;
  }
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    return GradedLexLess{}(a, b);
  });
  return out;
}

FreePolynomial::FreePolynomial(int n) : n_(n) {
  require(n >= 1, ErrorCode::InvalidArgument, "letter count must be >= 1");
}

FreePolynomial FreePolynomial::unit(int n) {
  FreePolynomial p(n);
  p.add_term(Word{}, 1.0);
  return p;
}

FreePolynomial FreePolynomial::generator(int n, int letter) {
  FreePolynomial p(n);
  p.add_term(Word{{letter}}, 1.0);
  return p;
}

FreePolynomial FreePolynomial::monomial(int n, const Word& w, Complex coeff) {
  FreePolynomial p(n);
  p.add_term(w, coeff);
  return p;
}

int FreePolynomial::degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.length();
}

Complex FreePolynomial::coefficient(const Word& w) const {
  const auto it = terms_.find(w);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void FreePolynomial::add_term(const Word& w, Complex coeff) {
  require(w.length() <= kDegreeCap, ErrorCode::SizeOverflow,
          "word exceeds the degree cap");
  for (int l : w.letters)
    require(l >= 1 && l <= n_, ErrorCode::InvalidArgument,
            "word letter out of range");
  if (coeff == Complex(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

FreePolynomial FreePolynomial::operator+(const FreePolynomial& other) const {
  require(n_ == other.n_, ErrorCode::DimensionMismatch, "letter counts differ");
  FreePolynomial out = *this;
  for (const auto& [w, c] : other.terms_) out.add_term(w, c);
  return out;
}

FreePolynomial FreePolynomial::operator-(const FreePolynomial& other) const {
  require(n_ == other.n_, ErrorCode::DimensionMismatch, "letter counts differ");
  FreePolynomial out = *this;
  for (const auto& [w, c] : other.terms_) out.add_term(w, -c);
  return out;
}

FreePolynomial FreePolynomial::operator*(const FreePolynomial& other) const {
  require(n_ == other.n_, ErrorCode::DimensionMismatch, "letter counts differ");
  FreePolynomial out(n_);
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : other.terms_) out.add_term(concat(w1, w2), c1 * c2);
  return out;
}

FreePolynomial FreePolynomial::operator*(Complex scalar) const {
  FreePolynomial out(n_);
  for (const auto& [w, c] : terms_) out.add_term(w, scalar * c);
  return out;
}

MatrixTuple::MatrixTuple(std::vector<CMat> ms) : mats(std::move(ms)) {
  require(!mats.empty(), ErrorCode::InvalidArgument, "tuple needs n >= 1");
  const Eigen::Index k = mats[0].rows();
  require(k >= 1, ErrorCode::InvalidArgument, "tuple matrices must be nonempty");
  for (const auto& m : mats)
    require(m.rows() == k && m.cols() == k, ErrorCode::DimensionMismatch,
            "tuple matrices must be square of equal size");
}

bool MatrixTuple::row_contractive() const { return row_norm(*this) <= 1.0 + 1e-12; }

Complex eval_point(const FreePolynomial& p, const cball::BallPoint& z) {
  require(z.dim() == p.letters(), ErrorCode::DimensionMismatch,
          "point dimension differs from letter count");
  Complex out = 0.0;
  for (const auto& [w, c] : p.terms()) {
    Complex prod = 1.0;
    for (int l : w.letters) prod *= z[l - 1];
    out += c * prod;
  }
  return out;
}

CMat eval_tuple(const FreePolynomial& p, const MatrixTuple& t) {
  require(t.n() == p.letters(), ErrorCode::DimensionMismatch,
          "tuple length differs from letter count");
  const int k = t.size();
  CMat out = CMat::Zero(k, k);
  for (const auto& [w, c] : p.terms()) {
    CMat prod = CMat::Identity(k, k);
    for (int l : w.letters) prod = prod * t.mats[l - 1];
    out += c * prod;
  }
  return out;
}

dshift::CPoly abelianize(const FreePolynomial& p) {
  dshift::CPoly out(p.letters());
  for (const auto& [w, c] : p.terms()) {
    std::vector<int> exps(p.letters(), 0);
    for (int l : w.letters) exps[l - 1] += 1;
    out.add_term(dshift::MultiIndex(std::move(exps)), c);
  }
  return out;
}

Word minimal_word(const FreePolynomial& p) {
  require(!p.is_zero(), ErrorCode::ZeroPolynomial,
          "the zero polynomial has no minimal word");
  return p.terms().begin()->first;  // map is graded-lex ordered
}

double row_norm(const MatrixTuple& t) {
  const int k = t.size();
  CMat row(k, static_cast<Eigen::Index>(k) * t.n());
  for (int i = 0; i < t.n(); ++i) row.middleCols(static_cast<Eigen::Index>(i) * k, k) = t.mats[i];
  return operator_norm(row);
}

FockBasis FockBasis::build(int n, int N) {
  require(n >= 1 && N >= 1, ErrorCode::InvalidArgument, "need n >= 1 and N >= 1");
  // dimension = (n^{N+1} - 1)/(n - 1), guarded against the basis cap
  long dim = 1;
  long level = 1;
  for (int len = 1; len <= N; ++len) {
    level *= n;
    dim += level;
    require(dim <= kFockBasisCap, ErrorCode::SizeOverflow,
            "Fock truncation exceeds the basis cap");
  }
  FockBasis basis;
  basis.n = n;
  basis.N = N;
  basis.words = all_words(n, N);
  for (std::size_t i = 0; i < basis.words.size(); ++i)
    basis.index.emplace(basis.words[i], static_cast<int>(i));
  return basis;
}

MatrixTuple fock_truncation(int n, int N) {
  const FockBasis basis = FockBasis::build(n, N);
  const int k = static_cast<int>(basis.words.size());
  std::vector<CMat> mats(n, CMat::Zero(k, k));
  for (int col = 0; col < k; ++col) {
    const Word& v = basis.words[col];
    if (v.length() >= N) continue;
    for (int a = 1; a <= n; ++a) {
      Word target{{a}};
      target.letters.insert(target.letters.end(), v.letters.begin(), v.letters.end());
      mats[a - 1](basis.index.at(target), col) = 1.0;
    }
  }
  return MatrixTuple(std::move(mats));
}

double fock_poly_norm(const FreePolynomial& p, int N) {
  require(N >= 1, ErrorCode::InvalidArgument, "need N >= 1");
  require(p.degree() <= N, ErrorCode::InvalidArgument,
          "truncation must accommodate the polynomial degree");
  if (p.is_zero()) return 0.0;
  const FockBasis basis = FockBasis::build(p.letters(), N);
  const int k = static_cast<int>(basis.words.size());

  // For each term (w, a): column v maps into row wv; precompute the target
  // index array so a matvec is a handful of gather passes.
  struct Term {
    Complex coeff;
    std::vector<int> target;  // -1 when wv leaves the truncation
  };
  std::vector<Term> terms;
  for (const auto& [w, c] : p.terms()) {
    Term term;
    term.coeff = c;
    term.target.assign(k, -1);
    for (int col = 0; col < k; ++col) {
      if (w.length() + basis.words[col].length() > N) continue;
      term.target[col] = basis.index.at(concat(w, basis.words[col]));
    }
    terms.push_back(std::move(term));
  }

  auto apply = [&](const CVec& x) {
    CVec y = CVec::Zero(k);
    for (const auto& term : terms)
      for (int col = 0; col < k; ++col)
        if (term.target[col] >= 0) y(term.target[col]) += term.coeff * x(col);
    return y;
  };
  auto apply_adjoint = [&](const CVec& y) {
    CVec x = CVec::Zero(k);
    for (const auto& term : terms)
      for (int col = 0; col < k; ++col)
        if (term.target[col] >= 0)
          x(col) += std::conj(term.coeff) * y(term.target[col]);
    return x;
  };

  // Lanczos on the Hermitian PSD operator A*A with full
  // reorthogonalization; the extreme Ritz value converges to machine
  // precision even for clustered top eigenvalues, where plain power
  // iteration plateaus early.
  Rng rng(0xf0cc ^ static_cast<std::uint64_t>(k));
  const int steps = std::min(k, 120);
  std::vector<CVec> krylov;
  krylov.reserve(steps);
  CVec q(k);
  for (int i = 0; i < k; ++i) q(i) = rng.complex_normal();
  q.normalize();
  krylov.push_back(q);
  std::vector<double> alpha, beta;  // T diagonal / subdiagonal

  auto top_ritz = [&]() {
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri,
                                                      Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
  };

  double previous = -1.0;
  for (int j = 0; j < steps; ++j) {
    CVec w = apply_adjoint(apply(krylov[j]));
    const double a = std::real(krylov[j].dot(w));
    alpha.push_back(a);
    w -= a * krylov[j];
    if (j > 0) w -= beta[j - 1] * krylov[j - 1];
    // full reorthogonalization, second pass only on heavy cancellation
    const double before = w.norm();
    for (const auto& b : krylov) w -= b.dot(w) * b;
    if (w.norm() < 0.5 * before)
      for (const auto& b : krylov) w -= b.dot(w) * b;
    const double nb = w.norm();
    if (nb <= 1e-13 * std::max(1.0, std::fabs(a))) break;  // invariant subspace
    beta.push_back(nb);
    krylov.push_back(w / nb);
    // the extreme Ritz value is nondecreasing; stop on a converged plateau
    if (j >= 24 && (j % 8) == 0) {
      const double current = top_ritz();
      if (previous >= 0.0 &&
          current - previous <= 1e-13 * std::max(1.0, current))
        break;
      previous = current;
    }
  }
  return std::sqrt(std::max(0.0, top_ritz()));
}

VonNeumannReport von_neumann_check(const FreePolynomial& p, const MatrixTuple& t,
                                   int N) {
  require(t.n() == p.letters(), ErrorCode::DimensionMismatch,
          "tuple length differs from letter count");
  require(row_norm(t) <= 1.0 + 1e-12, ErrorCode::NotRowContractive,
          "tuple is not row contractive");
  require(N >= std::max(1, p.degree()), ErrorCode::InvalidArgument,
          "need N >= deg(p)");
  VonNeumannReport report;
  report.lhs = operator_norm(eval_tuple(p, t));
  report.rhs = fock_poly_norm(p, N);
  report.pass = report.lhs <= report.rhs + 1e-6;
  return report;
}

}  // namespace ncball::freepoly
