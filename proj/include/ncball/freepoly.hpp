#pragma once

#include <map>
#include <vector>

#include "ncball/cball.hpp"
#include "ncball/cpoly.hpp"
#include "ncball/word.hpp"
#include "ncball/linalg.hpp"

namespace ncball::freepoly {

// Desk-scale guardrails.
inline constexpr int kDegreeCap = 12;
inline constexpr long kFockBasisCap = 200000;

/// Free noncommutative polynomial: finitely supported word -> coefficient
/// map over n letters.  Zero coefficients are never stored.
class FreePolynomial {
 public:
  using TermMap = std::map<Word, Complex, GradedLexLess>;

  explicit FreePolynomial(int n);
  static FreePolynomial unit(int n);
  static FreePolynomial generator(int n, int letter);
  static FreePolynomial monomial(int n, const Word& w, Complex coeff);

  int letters() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for the zero polynomial
  Complex coefficient(const Word& w) const;

  void add_term(const Word& w, Complex coeff);

  FreePolynomial operator+(const FreePolynomial& other) const;
  FreePolynomial operator-(const FreePolynomial& other) const;
  FreePolynomial operator*(const FreePolynomial& other) const;
  FreePolynomial operator*(Complex scalar) const;

 private:
  int n_ = 0;
  TermMap terms_;
};

/// n-tuple of equal-size square complex matrices.
struct MatrixTuple {
  std::vector<CMat> mats;

  MatrixTuple() = default;
  explicit MatrixTuple(std::vector<CMat> ms);

  int n() const { return static_cast<int>(mats.size()); }
  int size() const { return mats.empty() ? 0 : static_cast<int>(mats[0].rows()); }
  bool row_contractive() const;
};

/// Character evaluation theta_z(p) = sum a_v z^v (coordinate product along
/// the word).
Complex eval_point(const FreePolynomial& p, const cball::BallPoint& z);

/// Polynomial functional calculus on a tuple; the word l1 l2 ... lk goes to
/// T_{l1} T_{l2} ... T_{lk} (leftmost letter leftmost in the product).
CMat eval_tuple(const FreePolynomial& p, const MatrixTuple& t);

/// Image under the quotient by the commutator ideal.
dshift::CPoly abelianize(const FreePolynomial& p);

/// Length-minimal word with nonzero coefficient, graded-lex tie-break.
Word minimal_word(const FreePolynomial& p);

/// Largest singular value of the block row [T_1 ... T_n].
double row_norm(const MatrixTuple& t);

/// Left regular representation truncated to words of length <= N; basis
/// vector xi_v is sent to xi_{iv} by the i-th generator when it stays in
/// range, to 0 otherwise.
MatrixTuple fock_truncation(int n, int N);

/// Operator norm of p evaluated on the truncated left regular
/// representation.  Works term-sparsely so large truncations stay cheap.
double fock_poly_norm(const FreePolynomial& p, int N);

struct VonNeumannReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// Checks |p(T)| <= |p(S^(N))| + 1e-6 for a row contraction T.
VonNeumannReport von_neumann_check(const FreePolynomial& p, const MatrixTuple& t,
                                   int N);

/// Shared basis indexing for truncated Fock space.
struct FockBasis {
  int n = 0;
  int N = 0;
  std::vector<Word> words;                // graded-lex order
  std::map<Word, int, GradedLexLess> index;

  static FockBasis build(int n, int N);
};

}  // namespace ncball::freepoly
