#include "ncball/cpoly.hpp"

#include "ncball/errors.hpp"

namespace ncball::dshift {

CPoly::CPoly(int d) : d_(d) {
  require(d >= 1, ErrorCode::InvalidArgument, "variable count must be >= 1");
}

CPoly CPoly::unit(int d) {
  CPoly f(d);
  f.add_term(MultiIndex(std::vector<int>(d, 0)), 1.0);
  return f;
}

CPoly CPoly::variable(int d, int i) {
  require(i >= 1 && i <= d, ErrorCode::InvalidArgument, "variable index out of range");
  CPoly f(d);
  std::vector<int> exps(d, 0);
  exps[i - 1] = 1;
  f.add_term(MultiIndex(std::move(exps)), 1.0);
  return f;
}

int CPoly::degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.order();
}

void CPoly::add_term(const MultiIndex& alpha, Complex coeff) {
  require(static_cast<int>(alpha.exps.size()) == d_, ErrorCode::DimensionMismatch,
          "multi-index length differs from variable count");
  for (int e : alpha.exps)
    require(e >= 0, ErrorCode::InvalidArgument, "negative exponent");
  if (coeff == Complex(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(alpha, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

CPoly CPoly::operator+(const CPoly& other) const {
  require(d_ == other.d_, ErrorCode::DimensionMismatch, "variable counts differ");
  CPoly out = *this;
  for (const auto& [a, c] : other.terms_) out.add_term(a, c);
  return out;
}

CPoly CPoly::operator-(const CPoly& other) const {
  require(d_ == other.d_, ErrorCode::DimensionMismatch, "variable counts differ");
  CPoly out = *this;
  for (const auto& [a, c] : other.terms_) out.add_term(a, -c);
  return out;
}

CPoly CPoly::operator*(const CPoly& other) const {
  require(d_ == other.d_, ErrorCode::DimensionMismatch, "variable counts differ");
  CPoly out(d_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : other.terms_) {
      std::vector<int> exps(d_);
      for (int i = 0; i < d_; ++i) exps[i] = a.exps[i] + b.exps[i];
      out.add_term(MultiIndex(std::move(exps)), ca * cb);
    }
  return out;
}

CPoly CPoly::operator*(Complex scalar) const {
  CPoly out(d_);
  for (const auto& [a, c] : terms_) out.add_term(a, scalar * c);
  return out;
}

Complex ceval_point(const CPoly& f, const CVec& z) {
  require(static_cast<int>(z.size()) == f.vars(), ErrorCode::DimensionMismatch,
          "point dimension differs from variable count");
  Complex out = 0.0;
  for (const auto& [alpha, c] : f.terms()) {
    Complex prod = 1.0;
    for (int i = 0; i < f.vars(); ++i)
      for (int e = 0; e < alpha.exps[i]; ++e) prod *= z(i);
    out += c * prod;
  }
  return out;
}

}  // namespace ncball::dshift
