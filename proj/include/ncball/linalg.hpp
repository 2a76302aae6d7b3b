#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "ncball/rng.hpp"

namespace ncball {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Largest singular value.
double operator_norm(const CMat& m);

/// Largest absolute entry value.
double max_abs(const CMat& m);

/// max |U*U - I| over entries.
double unitary_defect(const CMat& u);

/// Polar projection onto the unitary group (SVD based).
CMat nearest_unitary(const CMat& m);

/// Haar-ish random unitary: QR of a complex Gaussian matrix with the
/// R-diagonal phases absorbed, deterministic for a fixed stream.
CMat random_unitary(Rng& rng, int n);

/// Unitary with eigenvalue angles drawn in [floor, 2*pi - floor] and pairwise
/// circular separation at least floor, conjugated by a random unitary.
CMat random_unitary_separated(Rng& rng, int n, double floor);

CVec random_interior_vector(Rng& rng, int n, double max_norm);

/// Orthonormal basis of the (numerical) null space of a; a singular value
/// counts as zero when <= rel_tol * sigma_max.
CMat nullspace(const CMat& a, double rel_tol);

/// Numerical rank with the same thresholding convention as nullspace().
int numerical_rank(const CMat& a, double rel_tol);

/// Partition indices of values into clusters of pairwise distance <= tol
/// (transitive closure).
std::vector<std::vector<int>> cluster_values(const std::vector<Complex>& values,
                                             double tol);

/// Greedy bipartite matching of two equally sized multisets of complex
/// numbers.  Returns the permutation sigma with b[sigma[i]] matched to a[i]
/// when every match is within tol, nullopt otherwise.
std::optional<std::vector<int>> match_multisets(const std::vector<Complex>& a,
                                                const std::vector<Complex>& b,
                                                double tol);

/// Max over the greedy pairing of the match distances (a coarse multiset
/// distance; exact for multisets that are unions of well separated clusters).
double multiset_gap(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Dimension of the unital algebra generated by the given square matrices,
/// computed by closing the linear span under right multiplication by the
/// generators.
int unital_algebra_dimension(const std::vector<CMat>& generators,
                             double rel_tol = 1e-9);

}  // namespace ncball
