#pragma once

#include <map>
#include <vector>

#include "ncball/linalg.hpp"

namespace ncball::dshift {

/// Multi-index exponent of a commutative monomial.
struct MultiIndex {
  std::vector<int> exps;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e) : exps(std::move(e)) {}

  int order() const {
    int s = 0;
    for (int e : exps) s += e;
    return s;
  }
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.exps == b.exps;
  }
};

struct GradedIndexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.exps < b.exps;
  }
};

/// Commutative polynomial in d variables, finitely supported
/// multi-index -> coefficient map with no stored zeros.
class CPoly {
 public:
  using TermMap = std::map<MultiIndex, Complex, GradedIndexLess>;

  explicit CPoly(int d);
  static CPoly unit(int d);
  static CPoly variable(int d, int i);  // z_i, 1-based

  int vars() const { return d_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  void add_term(const MultiIndex& alpha, Complex coeff);

  CPoly operator+(const CPoly& other) const;
  CPoly operator-(const CPoly& other) const;
  CPoly operator*(const CPoly& other) const;
  CPoly operator*(Complex scalar) const;

 private:
  int d_ = 0;
  TermMap terms_;
};

/// Evaluation at a point of C^d.
Complex ceval_point(const CPoly& f, const CVec& z);

}  // namespace ncball::dshift
