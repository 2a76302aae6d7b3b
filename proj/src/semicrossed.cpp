#include "ncball/semicrossed.hpp"

#include <algorithm>
#include <cmath>

#include "ncball/errors.hpp"

namespace ncball::semicrossed {

using freepoly::FreePolynomial;
using freepoly::Word;

SemicrossedElement::SemicrossedElement(int n) : n_(n) {
  require(n >= 1, ErrorCode::InvalidArgument, "letter count must be >= 1");
}

SemicrossedElement SemicrossedElement::from_polynomial(const FreePolynomial& a0) {
  SemicrossedElement x(a0.letters());
  x.set_coefficient(0, a0);
  return x;
}

FreePolynomial SemicrossedElement::coefficient(int m) const {
  const auto it = coeffs_.find(m);
  return it == coeffs_.end() ? FreePolynomial(n_) : it->second;
}

void SemicrossedElement::set_coefficient(int m, const FreePolynomial& poly) {
  require(m >= 0, ErrorCode::InvalidArgument, "U power must be >= 0");
  require(poly.letters() == n_, ErrorCode::DimensionMismatch,
          "coefficient letter count differs");
  if (poly.is_zero())
    coeffs_.erase(m);
  else
    coeffs_.insert_or_assign(m, poly);
}

void SemicrossedElement::add_term(int m, const Word& w, Complex coeff) {
  FreePolynomial p = coefficient(m);
  p.add_term(w, coeff);
  set_coefficient(m, p);
}

bool character_valid(const MobiusAutomorphism& phi, const BallPoint& z,
                     Complex lambda) {
  require(phi.dim() == z.dim(), ErrorCode::DimensionMismatch,
          "point dimension differs from the automorphism");
  require(std::abs(lambda) <= 1.0 + 1e-12, ErrorCode::InvalidArgument,
          "|lambda| must be <= 1");
  if (lambda == Complex(0.0)) return true;
  return cball::distance(cball::apply(phi, z), z) <= 1e-10;
}

const char* to_string(SetKind k) noexcept {
  switch (k) {
    case SetKind::BallZero: return "BallZero";
    case SetKind::FixDisk: return "FixDisk";
    case SetKind::FixCircleFiber: return "FixCircleFiber";
    case SetKind::BoundaryDisk: return "BoundaryDisk";
  }
  return "?";
}

CensusReport census(const MobiusAutomorphism& phi) {
  CensusReport report;
  report.n = phi.dim();
  const cball::FixedPointData fp = cball::fixed_points(phi);

  if (fp.type == cball::AutomorphismType::Identity) {
    // Everything is fixed: the ball-times-disk swallows every other set.
    AnalyticSetDescriptor top;
    top.kind = SetKind::FixDisk;
    top.dimension = report.n + 1;
    top.fixed_set = fp.interior_set;
    report.sets.push_back(std::move(top));
    return report;
  }

  AnalyticSetDescriptor ball;
  ball.kind = SetKind::BallZero;
  ball.dimension = report.n;
  report.sets.push_back(std::move(ball));

  if (fp.interior_set) {
    const int f0 = fp.interior_set->dim();
    AnalyticSetDescriptor disk;
    disk.kind = SetKind::FixDisk;
    disk.dimension = f0 + 1;
    disk.fixed_set = fp.interior_set;
    report.sets.push_back(std::move(disk));

    AnalyticSetDescriptor fiber;
    fiber.kind = SetKind::FixCircleFiber;
    fiber.dimension = f0;
    fiber.fixed_set = fp.interior_set;
    fiber.circle_family = true;
    report.sets.push_back(std::move(fiber));
  }
  for (const auto& x : fp.boundary_points) {
    AnalyticSetDescriptor disk;
    disk.kind = SetKind::BoundaryDisk;
    disk.dimension = 1;
    disk.boundary_point = x;
    report.sets.push_back(std::move(disk));
  }
  return report;
}

bool recognize_identity(const CensusReport& report) {
  int top = -1;
  int count = 0;
  const AnalyticSetDescriptor* witness = nullptr;
  for (const auto& s : report.sets) {
    if (s.dimension > top) {
      top = s.dimension;
      count = 1;
      witness = &s;
    } else if (s.dimension == top) {
      ++count;
    }
  }
  return witness != nullptr && count == 1 && witness->kind == SetKind::FixDisk &&
         top == report.n + 1;
}

CovariantPair build_srep(const MobiusAutomorphism& phi, const BallPoint& z,
                         const CVec& b, Complex c) {
  const int n = phi.dim();
  require(z.dim() == n, ErrorCode::DimensionMismatch,
          "point dimension differs from the automorphism");
  require(static_cast<int>(b.size()) == n, ErrorCode::DimensionMismatch,
          "off-diagonal vector has wrong length");
  require(std::abs(c) > 0.0, ErrorCode::ZeroC, "need c != 0");
  require(z.interior(), ErrorCode::InvalidArgument, "z must be interior");
  const BallPoint theta1 = cball::apply(phi, z);
  require(cball::distance(theta1, z) > 1e-8, ErrorCode::PointIsFixed,
          "z must not be fixed by the action");

  auto assemble = [&](double t) {
    std::vector<CMat> gens(n, CMat::Zero(2, 2));
    for (int j = 0; j < n; ++j) {
      gens[j](0, 0) = theta1[j];
      gens[j](0, 1) = t * b(j);
      gens[j](1, 1) = z[j];
    }
    return gens;
  };
  auto admissible = [&](double t) {
    if (t * std::abs(c) > 1.0 - 1e-6) return false;
    return freepoly::row_norm(freepoly::MatrixTuple(assemble(t))) <= 1.0 - 1e-6;
  };

  // Largest t <= 1 keeping both contraction constraints strict; t -> 0
  // degenerates to the diagonal pair, which is admissible for interior
  // points, so the bisection is well posed.
  double t = 1.0;
  if (!admissible(1.0)) {
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 80; ++iter) {
      const double mid = (lo + hi) / 2.0;
      (admissible(mid) ? lo : hi) = mid;
    }
    t = lo;
  }

  CovariantPair pair;
  pair.n = n;
  pair.generator_images = assemble(t);
  pair.k_image = CMat::Zero(2, 2);
  pair.k_image(0, 1) = t * c;
  pair.diagonal_points = std::vector<BallPoint>{theta1, z};
  return pair;
}

namespace {

void validate_2x2_shape(const CovariantPair& pair) {
  require(pair.size() == 2, ErrorCode::WrongShape, "pair is not 2x2");
  require(pair.diagonal_points.has_value() && pair.diagonal_points->size() == 2,
          ErrorCode::WrongShape, "pair has no diagonal characters");
  for (const auto& g : pair.generator_images) {
    require(g.rows() == 2 && g.cols() == 2, ErrorCode::WrongShape,
            "generator image is not 2x2");
    require(std::abs(g(1, 0)) <= 1e-14, ErrorCode::WrongShape,
            "generator image is not upper triangular");
  }
  require(std::abs(pair.k_image(0, 0)) <= 1e-14 &&
              std::abs(pair.k_image(1, 0)) <= 1e-14 &&
              std::abs(pair.k_image(1, 1)) <= 1e-14,
          ErrorCode::WrongShape, "K must be a multiple of E_12");
  const auto& pts = *pair.diagonal_points;
  for (int j = 0; j < pair.n; ++j) {
    require(std::abs(pair.generator_images[j](0, 0) - pts[0][j]) <= 1e-12 &&
                std::abs(pair.generator_images[j](1, 1) - pts[1][j]) <= 1e-12,
            ErrorCode::WrongShape,
            "diagonal characters disagree with the generator images");
  }
}

}  // namespace

double check_covariance_2x2(const CovariantPair& pair, const MobiusAutomorphism& phi) {
  validate_2x2_shape(pair);
  require(pair.n == phi.dim(), ErrorCode::DimensionMismatch,
          "pair and automorphism dimensions differ");
  const Complex c = pair.k_image(0, 1);
  const BallPoint& theta1 = (*pair.diagonal_points)[0];
  const BallPoint image2 = cball::apply(phi, (*pair.diagonal_points)[1]);
  double residual = 0.0;
  for (int j = 0; j < pair.n; ++j)
    residual = std::max(residual, std::abs(theta1[j] * c - c * image2[j]));
  return residual;
}

ThetaRelationReport forced_theta_relation(const CovariantPair& pair,
                                          const MobiusAutomorphism& phi) {
  validate_2x2_shape(pair);
  require(std::abs(pair.k_image(0, 1)) > 0.0, ErrorCode::ZeroC, "need c != 0");
  ThetaRelationReport report;
  report.gap =
      cball::distance((*pair.diagonal_points)[0],
                      cball::apply(phi, (*pair.diagonal_points)[1]));
  report.holds = report.gap <= 1e-8;
  return report;
}

namespace {

/// Affine polynomial with hat-value 1 at p and 0 at q (p != q):
/// A(zeta) = (<zeta,u> - <q,u>) / |u|^2 with u = p - q.
FreePolynomial interpolation_witness(const BallPoint& p, const BallPoint& q) {
  const int n = p.dim();
  const CVec u = p.coords() - q.coords();
  const double nu2 = u.squaredNorm();
  FreePolynomial a(n);
  for (int l = 1; l <= n; ++l)
    a.add_term(Word{{l}}, std::conj(u(l - 1)) / nu2);
  a.add_term(Word{}, -u.dot(q.coords()) / nu2);
  return a;
}

}  // namespace

ZeroUCertificate zero_u_certificate(const std::vector<BallPoint>& z,
                                    const MobiusAutomorphism& phi) {
  require(!z.empty(), ErrorCode::InvalidArgument, "need at least one point");
  const int n = phi.dim();
  ZeroUCertificate cert{n, phi, z, {}, {}};
  for (const auto& p : z) {
    require(p.dim() == n, ErrorCode::DimensionMismatch,
            "point dimension differs from the automorphism");
    require(p.interior(), ErrorCode::InvalidArgument, "points must be interior");
    cert.images.push_back(cball::apply(phi, p));
  }
  const int k = static_cast<int>(z.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      require(cball::distance(z[i], cert.images[j]) > 1e-8,
              ErrorCode::HypothesisViolated,
              "the point set meets its image under the action");

  // Superdiagonal induction order d = 0, 1, ..., k-1; each entry gets an
  // interpolation witness with unit pivot.
  for (int d = 0; d < k; ++d) {
    for (int i = 0; i + d < k; ++i) {
      const int j = i + d;
      FreePolynomial witness = interpolation_witness(z[i], cert.images[j]);
      const Complex at_zi = eval_point(witness, z[i]);
      const Complex at_img = eval_point(witness, cert.images[j]);
      require(std::abs(at_zi - 1.0) <= 1e-12 && std::abs(at_img) <= 1e-12,
              ErrorCode::NormalizationFailure,
              "interpolation witness failed its defining identities");
      cert.transcript.push_back({i + 1, j + 1, std::move(witness),
                                 std::abs(at_zi - at_img)});
    }
  }
  return cert;
}

std::map<std::pair<int, int>, FreePolynomial> ZeroUCertificate::witnesses() const {
  std::map<std::pair<int, int>, FreePolynomial> out;
  for (const auto& e : transcript)
    if (e.row < e.col) out.emplace(std::make_pair(e.row, e.col), e.witness);
  return out;
}

ZeroUReplay zero_u_replay(const ZeroUCertificate& cert, const CMat& candidate) {
  const int k = static_cast<int>(cert.points.size());
  require(candidate.rows() == k && candidate.cols() == k, ErrorCode::WrongShape,
          "candidate size differs from the certificate");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < i; ++j)
      require(std::abs(candidate(i, j)) <= 1e-14, ErrorCode::WrongShape,
              "candidate must be upper triangular");

  ZeroUReplay replay;
  replay.forced = candidate;
  replay.defects = CMat::Zero(k, k);
  replay.min_pivot = std::numeric_limits<double>::infinity();
  // Walk the transcript in superdiagonal order.  At entry (i,j) every
  // already-forced entry is zero, so the covariance identity for the witness
  // reduces to pivot * K_ij = 0 and the entry is forced.
  for (const auto& e : cert.transcript) {
    const int i = e.row - 1;
    const int j = e.col - 1;
    const Complex at_zi = eval_point(e.witness, cert.points[i]);
    const Complex at_img = eval_point(e.witness, cert.images[j]);
    const Complex pivot = at_zi - at_img;
    replay.min_pivot = std::min(replay.min_pivot, std::abs(pivot));
    replay.defects(i, j) = pivot * replay.forced(i, j);
    replay.forced(i, j) = 0.0;
  }
  return replay;
}

CovariantPair orbit_representation(const MobiusAutomorphism& phi, const BallPoint& z,
                                   int blocks) {
  require(blocks >= 2, ErrorCode::InvalidArgument, "need at least two blocks");
  require(phi.dim() == z.dim(), ErrorCode::DimensionMismatch,
          "point dimension differs from the automorphism");
  require(z.interior(), ErrorCode::InvalidArgument, "z must be interior");
  const int n = phi.dim();
  std::vector<BallPoint> orbit;
  orbit.reserve(blocks);
  orbit.push_back(z);
  for (int m = 1; m < blocks; ++m) orbit.push_back(cball::apply(phi, orbit.back()));

  CovariantPair pair;
  pair.n = n;
  pair.generator_images.assign(n, CMat::Zero(blocks, blocks));
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < blocks; ++m) pair.generator_images[j](m, m) = orbit[m][j];
  pair.k_image = CMat::Zero(blocks, blocks);
  for (int m = 0; m + 1 < blocks; ++m) pair.k_image(m + 1, m) = 1.0;
  pair.diagonal_points = std::move(orbit);
  return pair;
}

double orbit_covariance_residual(const CovariantPair& pair,
                                 const MobiusAutomorphism& phi) {
  require(pair.diagonal_points.has_value(), ErrorCode::WrongShape,
          "pair carries no diagonal characters");
  require(pair.n == phi.dim(), ErrorCode::DimensionMismatch,
          "pair and automorphism dimensions differ");
  const int size = pair.size();
  for (const auto& g : pair.generator_images)
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j)
        if (i != j)
          require(std::abs(g(i, j)) == 0.0, ErrorCode::WrongShape,
                  "generator images must be diagonal");
  // pi(phi(S_j)) is diagonal with entries phi-hat(point_m)_j, so the
  // covariance defect is computable entrywise.
  const auto& pts = *pair.diagonal_points;
  std::vector<BallPoint> images;
  images.reserve(size);
  for (const auto& p : pts) images.push_back(cball::apply(phi, p));
  double residual = 0.0;
  for (int j = 0; j < pair.n; ++j) {
    CMat lhs = pair.generator_images[j] * pair.k_image;
    CMat rhs = pair.k_image;
    for (int m = 0; m < size; ++m) rhs.col(m) *= images[m][j];
    residual = std::max(residual, max_abs(CMat(lhs - rhs)));
  }
  return residual;
}

CMat eval_cov(const CovariantPair& pair, const SemicrossedElement& x) {
  require(pair.n == x.letters(), ErrorCode::DimensionMismatch,
          "element letter count differs from the pair");
  const int size = pair.size();
  CMat out = CMat::Zero(size, size);
  CMat k_power = CMat::Identity(size, size);
  int power = 0;
  for (const auto& [m, poly] : x.coeffs()) {
    while (power < m) {
      k_power = k_power * pair.k_image;
      ++power;
    }
    out += k_power * eval_tuple(poly, pair.tuple());
  }
  return out;
}

bool in_ideal(const SemicrossedElement& x) { return x.coefficient(0).is_zero(); }

nestrep::SeparationWitness certify_not_in_ideal(const SemicrossedElement& x,
                                                const nestrep::PointSequence& z,
                                                double eps, std::uint64_t seed,
                                                int max_tries) {
  require(!in_ideal(x), ErrorCode::IsInIdeal,
          "element lies in the ideal generated by U");
  return nestrep::separate(x.coefficient(0), z, eps, seed, max_tries);
}

const char* to_string(IsoVerdict v) noexcept {
  switch (v) {
    case IsoVerdict::Isomorphic: return "Isomorphic";
    case IsoVerdict::NotIsomorphic: return "NotIsomorphic";
    case IsoVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

IsomorphismReport decide_isomorphism(const MobiusAutomorphism& phi1,
                                     const MobiusAutomorphism& phi2) {
  require(phi1.dim() == phi2.dim(), ErrorCode::DimensionMismatch,
          "automorphisms live on balls of different dimension");
  require(phi1.dim() >= 2, ErrorCode::InvalidArgument,
          "the isomorphism decision needs n >= 2");
  IsomorphismReport report;
  report.conjugacy = cball::are_conjugate(phi1, phi2);
  report.census1 = census(phi1);
  report.census2 = census(phi2);
  switch (report.conjugacy.verdict) {
    case cball::ConjugacyOutcome::Conjugate:
      report.verdict = IsoVerdict::Isomorphic;
      break;
    case cball::ConjugacyOutcome::NotConjugate:
      report.verdict = IsoVerdict::NotIsomorphic;
      break;
    case cball::ConjugacyOutcome::Inconclusive:
      report.verdict = IsoVerdict::Inconclusive;
      break;
  }
  return report;
}

}  // namespace ncball::semicrossed
