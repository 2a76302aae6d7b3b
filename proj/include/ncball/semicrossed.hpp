#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ncball/cball.hpp"
#include "ncball/nestrep.hpp"
#include "ncball/semicrossed_element.hpp"

namespace ncball::semicrossed {

using cball::BallPoint;
using cball::MobiusAutomorphism;

/// Character of the semicrossed product, parameterized by a ball point and
/// the value at U.
struct Character {
  BallPoint z;
  Complex lambda;
};

/// lambda must vanish unless z is fixed by the symbol map.
bool character_valid(const MobiusAutomorphism& phi, const BallPoint& z,
                     Complex lambda);

enum class SetKind { BallZero, FixDisk, FixCircleFiber, BoundaryDisk };

const char* to_string(SetKind k) noexcept;

/// One maximal analytic set of the character space.
struct AnalyticSetDescriptor {
  SetKind kind = SetKind::BallZero;
  int dimension = 0;
  std::optional<cball::AffineSet> fixed_set;  // FixDisk / FixCircleFiber payload
  bool circle_family = false;                 // FixCircleFiber marks a T-indexed family
  std::optional<BallPoint> boundary_point;    // BoundaryDisk payload
};

struct CensusReport {
  int n = 0;
  std::vector<AnalyticSetDescriptor> sets;
};

CensusReport census(const MobiusAutomorphism& phi);

/// True iff the unique top-dimensional set is the full ball-times-disk of
/// dimension n+1, which happens exactly for the identity action.
bool recognize_identity(const CensusReport& report);

/// Covariant pair (pi, K): row-contractive generator images plus a
/// contraction intertwining pi and pi-after-the-action.
struct CovariantPair {
  int n = 0;
  std::vector<CMat> generator_images;
  CMat k_image;
  std::optional<std::vector<BallPoint>> diagonal_points;

  int size() const { return static_cast<int>(k_image.rows()); }
  freepoly::MatrixTuple tuple() const { return freepoly::MatrixTuple(generator_images); }
};

/// 2x2 upper-triangular s-representation with diagonal characters
/// (phi-hat(z), z) and K = c E_12; b and c are jointly rescaled to honor the
/// contraction constraints.
CovariantPair build_srep(const MobiusAutomorphism& phi, const BallPoint& z,
                         const CVec& b, Complex c);

/// max_j |theta1_j * c - c * phi-hat(theta2)_j| — the complete covariance
/// content for a rank-one strictly upper K.
double check_covariance_2x2(const CovariantPair& pair, const MobiusAutomorphism& phi);

struct ThetaRelationReport {
  bool holds = false;
  double gap = 0.0;
};

ThetaRelationReport forced_theta_relation(const CovariantPair& pair,
                                          const MobiusAutomorphism& phi);

/// Certificate that every nest representation with the given diagonal points
/// kills U, provided {z_i} and {phi-hat(z_j)} are disjoint.  Witnesses are
/// affine interpolation polynomials; the transcript replays the
/// superdiagonal induction of the annihilation argument.
struct ZeroUCertificate {
  int n = 0;
  MobiusAutomorphism phi;
  std::vector<BallPoint> points;
  std::vector<BallPoint> images;  // phi-hat of each point

  struct TranscriptEntry {
    int row = 0;  // 1-based
    int col = 0;  // 1-based, row <= col
    freepoly::FreePolynomial witness;
    double pivot = 0.0;  // |A(z_row) - A(phi-hat(z_col))|, 1 by construction
  };
  std::vector<TranscriptEntry> transcript;  // ordered by superdiagonal

  /// The strictly upper witnesses (row < col) keyed by (row, col).
  std::map<std::pair<int, int>, freepoly::FreePolynomial> witnesses() const;
};

ZeroUCertificate zero_u_certificate(const std::vector<BallPoint>& z,
                                    const MobiusAutomorphism& phi);

struct ZeroUReplay {
  CMat forced;         // the entries forced by the induction (must be zero)
  CMat defects;        // pivot * candidate entry, the covariance defect per entry
  double min_pivot = 0.0;
};

/// Replays the induction on an upper-triangular candidate for the image of
/// U; the derived triangular system has unit pivots, so the only solution is
/// zero no matter the candidate.
ZeroUReplay zero_u_replay(const ZeroUCertificate& cert, const CMat& candidate);

/// Orbit representation over the character at z truncated to N blocks:
/// diagonal generator images along the orbit, K the shift with entries at
/// (m+1, m), the direction that satisfies pi(A) K = K pi(phi(A)) exactly.
CovariantPair orbit_representation(const MobiusAutomorphism& phi, const BallPoint& z,
                                   int blocks);

/// Covariance residual for pairs with diagonal generator images (the action
/// composite is computable entrywise on characters).
double orbit_covariance_residual(const CovariantPair& pair,
                                 const MobiusAutomorphism& phi);

/// (pi x K)(sum U^m A_m) = sum K^m pi(A_m), in exactly that order.
CMat eval_cov(const CovariantPair& pair, const SemicrossedElement& x);

/// Membership in the closed ideal generated by U: equivalent to A_0 = 0.
bool in_ideal(const SemicrossedElement& x);

/// For a non-member, a nest representation annihilating U but not X.
nestrep::SeparationWitness certify_not_in_ideal(const SemicrossedElement& x,
                                                const nestrep::PointSequence& z,
                                                double eps, std::uint64_t seed,
                                                int max_tries = 1000);

enum class IsoVerdict { Isomorphic, NotIsomorphic, Inconclusive };

const char* to_string(IsoVerdict v) noexcept;

struct IsomorphismReport {
  IsoVerdict verdict = IsoVerdict::Inconclusive;
  cball::ConjugacyVerdict conjugacy;
  CensusReport census1;
  CensusReport census2;
};

/// Isomorphic iff the symbols are conjugate; censuses attached as the
/// dimension/type shadow of the analytic-set invariant.
IsomorphismReport decide_isomorphism(const MobiusAutomorphism& phi1,
                                     const MobiusAutomorphism& phi2);

}  // namespace ncball::semicrossed
