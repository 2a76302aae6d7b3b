#include "ncball/linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "ncball/errors.hpp"

namespace ncball {

double operator_norm(const CMat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (std::min(m.rows(), m.cols()) > 32) {
    Eigen::BDCSVD<CMat> svd(m);
    return svd.singularValues()(0);
  }
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues()(0);
}

double max_abs(const CMat& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      best = std::max(best, std::abs(m(i, j)));
  return best;
}

double unitary_defect(const CMat& u) {
  CMat d = u.adjoint() * u;
  d -= CMat::Identity(u.cols(), u.cols());
  return max_abs(d);
}

CMat nearest_unitary(const CMat& m) {
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMat random_unitary(Rng& rng, int n) {
  CMat g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

CMat random_unitary_separated(Rng& rng, int n, double floor) {
  const double two_pi = 6.283185307179586476925286766559;
  std::vector<double> angles(n);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (int i = 0; i < n; ++i) angles[i] = rng.uniform(floor, two_pi - floor);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n; ++j) {
        double d = std::fabs(angles[i] - angles[j]);
        d = std::min(d, two_pi - d);
        if (d < floor) {
          ok = false;
          break;
        }
      }
    if (ok) break;
  }
  CVec diag(n);
  for (int i = 0; i < n; ++i)
    diag(i) = Complex(std::cos(angles[i]), std::sin(angles[i]));
  CMat w = random_unitary(rng, n);
  return w * diag.asDiagonal() * w.adjoint();
}

CVec random_interior_vector(Rng& rng, int n, double max_norm) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
  const double norm = v.norm();
  const double target = max_norm * rng.uniform();
  if (norm > 0.0) v *= target / norm;
  return v;
}

CMat nullspace(const CMat& a, double rel_tol) {
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_tol * (sv.size() > 0 ? sv(0) : 0.0);
  int null_dim = 0;
  for (Eigen::Index i = sv.size() - 1; i >= 0; --i) {
    if (sv(i) <= cutoff)
      ++null_dim;
    else
      break;
  }
  return svd.matrixV().rightCols(null_dim);
}

int numerical_rank(const CMat& a, double rel_tol) {
  Eigen::JacobiSVD<CMat> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = rel_tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

std::vector<std::vector<int>> cluster_values(const std::vector<Complex>& values,
                                             double tol) {
  const int n = static_cast<int>(values.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(values[i] - values[j]) <= tol) parent[find(i)] = find(j);
  std::vector<std::vector<int>> groups;
  std::vector<int> root_of(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (root_of[r] < 0) {
      root_of[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[root_of[r]].push_back(i);
  }
  return groups;
}

std::optional<std::vector<int>> match_multisets(const std::vector<Complex>& a,
                                                const std::vector<Complex>& b,
                                                double tol) {
  if (a.size() != b.size()) return std::nullopt;
  const int n = static_cast<int>(a.size());
  std::vector<int> sigma(n, -1);
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    int best = -1;
    double best_d = 0.0;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(a[i] - b[j]);
      if (best < 0 || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    if (best < 0 || best_d > tol) return std::nullopt;
    used[best] = true;
    sigma[i] = best;
  }
  return sigma;
}

double multiset_gap(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(a.size());
  std::vector<bool> used(n, false);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    int best = -1;
    double best_d = 0.0;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(a[i] - b[j]);
      if (best < 0 || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

int unital_algebra_dimension(const std::vector<CMat>& generators, double rel_tol) {
  require(!generators.empty(), ErrorCode::InvalidArgument,
          "algebra dimension needs at least one generator");
  const Eigen::Index m = generators[0].rows();
  for (const auto& g : generators)
    require(g.rows() == m && g.cols() == m, ErrorCode::DimensionMismatch,
            "generators must be square of equal size");

  auto vec = [m](const CMat& x) {
    return Eigen::Map<const CVec>(x.data(), m * m);
  };

  std::vector<CVec> basis;   // orthonormal
  std::vector<CMat> matrix;  // matrix behind each basis vector
  auto insert = [&](const CMat& x) -> bool {
    CVec v = vec(x);
    const double scale = v.norm();
    if (scale < 1e-300) return false;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) v -= q.dot(v) * q;
    if (v.norm() <= rel_tol * scale) return false;
    v.normalize();
    basis.push_back(v);
    matrix.push_back(x);
    return true;
  };

  insert(CMat::Identity(m, m));
  std::size_t cursor = 0;
  const std::size_t cap = static_cast<std::size_t>(m * m);
  while (cursor < matrix.size() && basis.size() < cap) {
    const CMat current = matrix[cursor++];
    for (const auto& g : generators) insert(current * g);
  }
  return static_cast<int>(basis.size());
}

}  // namespace ncball
