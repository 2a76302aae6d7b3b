#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncball/linalg.hpp"

namespace ncball::cball {

/// A point of the closed unit ball of C^n.
class BallPoint {
 public:
  BallPoint() = default;
  explicit BallPoint(CVec coords);
  static BallPoint zero(int n);

  int dim() const { return static_cast<int>(coords_.size()); }
  const CVec& coords() const { return coords_; }
  Complex operator[](int i) const { return coords_(i); }
  double norm() const { return coords_.norm(); }
  bool interior() const { return norm() < 1.0 - 1e-12; }

 private:
  CVec coords_;
};

double distance(const BallPoint& a, const BallPoint& b);

/// Conformal automorphism of the unit ball in canonical form
/// z |-> U * phi_a(z), where phi_a is the involution exchanging a and 0
/// and U is unitary.  The pair (U, a) is unique for a given map.
class MobiusAutomorphism {
 public:
  MobiusAutomorphism(CMat unitary, BallPoint center);
  static MobiusAutomorphism identity(int n);

  int dim() const { return n_; }
  const CMat& unitary_part() const { return unitary_; }
  const BallPoint& center() const { return center_; }

 private:
  int n_ = 0;
  CMat unitary_;
  BallPoint center_;
};

enum class AutomorphismType { Identity, Elliptic, Parabolic, Hyperbolic };

const char* to_string(AutomorphismType t) noexcept;

/// Affine slice of the ball: { base + directions * t }, with orthonormal
/// direction columns.  Complex dimension = number of columns.
struct AffineSet {
  BallPoint base;
  CMat directions;  // n x f, orthonormal columns (f may be 0)
  int dim() const { return static_cast<int>(directions.cols()); }
};

struct FixedPointData {
  std::optional<AffineSet> interior_set;
  std::vector<BallPoint> boundary_points;  // 0, 1 or 2 isolated sphere points
  AutomorphismType type = AutomorphismType::Identity;
};

/// Linear model of an automorphism: (n+1)x(n+1) matrix preserving the form
/// J = diag(1,...,1,-1), normalized so M*JM = J.  The map acts on the affine
/// chart (last homogeneous coordinate = 1).
struct AutomorphismLift {
  CMat matrix;
  int dim() const { return static_cast<int>(matrix.rows()) - 1; }

  CVec chart_apply(const CVec& z) const;
  double form_residual() const;
};

struct InvariantMismatch {
  std::string invariant;  // "type", "derivative-spectrum", "lift-spectrum", "jordan"
  std::string detail;
  std::vector<Complex> left_spectrum;
  std::vector<Complex> right_spectrum;
  std::vector<int> left_jordan;
  std::vector<int> right_jordan;
  double gap = 0.0;
};

enum class ConjugacyOutcome { Conjugate, NotConjugate, Inconclusive };

const char* to_string(ConjugacyOutcome v) noexcept;

struct ConjugacyVerdict {
  ConjugacyOutcome verdict = ConjugacyOutcome::Inconclusive;
  std::optional<MobiusAutomorphism> certificate;  // gamma with gamma phi1 gamma^-1 = phi2
  std::optional<InvariantMismatch> mismatch;
  double certificate_residual = 0.0;
};

// -- operations --------------------------------------------------------

/// Involution phi_a: phi_a(a) = 0, phi_a(0) = a, phi_a of phi_a = id.
MobiusAutomorphism involution(const BallPoint& a);

BallPoint apply(const MobiusAutomorphism& phi, const BallPoint& z);

MobiusAutomorphism compose(const MobiusAutomorphism& phi,
                           const MobiusAutomorphism& psi);

MobiusAutomorphism inverse(const MobiusAutomorphism& phi);

AutomorphismLift lift(const MobiusAutomorphism& phi);

/// Recover the canonical form from a form-preserving matrix (up to positive
/// scale).  Inverse of lift() up to normalization.
MobiusAutomorphism automorphism_from_lift(const CMat& matrix);

bool is_identity(const MobiusAutomorphism& phi);

FixedPointData fixed_points(const MobiusAutomorphism& phi);

AutomorphismType classify(const MobiusAutomorphism& phi);

ConjugacyVerdict are_conjugate(const MobiusAutomorphism& phi1,
                               const MobiusAutomorphism& phi2);

MobiusAutomorphism random_automorphism(std::uint64_t seed, int n,
                                       std::optional<AutomorphismType> type_hint = {});

/// Deterministic interior sample points (norm <= 0.8), used for identity
/// probes and residual checks.
std::vector<BallPoint> probe_points(int n, int count, std::uint64_t salt = 0);

/// sup over probes of |(gamma phi1 gamma^-1)(z) - phi2(z)|.
double conjugation_residual(const MobiusAutomorphism& gamma,
                            const MobiusAutomorphism& phi1,
                            const MobiusAutomorphism& phi2, int samples = 64);

/// Spectral data of a lift: clustered eigenvalues with eigenspaces and
/// Jordan block sizes.
struct LiftSpectral {
  struct Cluster {
    Complex lambda;
    int multiplicity = 0;
    CMat eigenvectors;            // orthonormal null space basis of M - lambda I
    std::vector<int> jordan_sizes;
  };
  std::vector<Cluster> clusters;

  std::vector<Complex> eigenvalue_list() const;  // with multiplicity
  std::vector<int> jordan_list() const;          // all block sizes, sorted
};

LiftSpectral lift_spectral(const CMat& m, double cluster_tol = 1e-5);

}  // namespace ncball::cball
