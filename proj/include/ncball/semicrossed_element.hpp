#pragma once

#include <map>

#include "ncball/freepoly.hpp"

namespace ncball::semicrossed {

/// Finite sum  sum_m U^m A_m  with A_m free polynomials; the probe object
/// for ideal membership.  Zero polynomials are never stored.
class SemicrossedElement {
 public:
  using CoeffMap = std::map<int, freepoly::FreePolynomial>;

  explicit SemicrossedElement(int n);
  static SemicrossedElement from_polynomial(const freepoly::FreePolynomial& a0);

  int letters() const { return n_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int max_power() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

  /// A_m (the zero polynomial when absent).
  freepoly::FreePolynomial coefficient(int m) const;

  void set_coefficient(int m, const freepoly::FreePolynomial& poly);
  void add_term(int m, const freepoly::Word& w, Complex coeff);

 private:
  int n_ = 0;
  CoeffMap coeffs_;
};

}  // namespace ncball::semicrossed
