#include "ncball/cball.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "ncball/errors.hpp"

namespace ncball::cball {

namespace {

// J = diag(1,...,1,-1) acting on homogeneous vectors.
CMat j_times(const CMat& m) {
  CMat r = m;
  r.row(r.rows() - 1) *= -1.0;
  return r;
}

CMat form_gram(const CMat& m) { return m.adjoint() * j_times(m); }

CMat form_defect(const CMat& m) {
  CMat g = form_gram(m);
  const Eigen::Index n = g.rows() - 1;
  g.topLeftCorner(n, n) -= CMat::Identity(n, n);
  g(n, n) += 1.0;
  return g;
}

/// The involution factor of the canonical form.  For a != 0 this is the
/// standard involution exchanging a and 0: with P the projection onto
/// span(a), Q = I - P and s = sqrt(1 - |a|^2),
///   phi_a(z) = (a - P z - s Q z) / (1 - <z,a>).
/// The stored factor at a = 0 is the identity, so a pair (U, 0) acts
/// linearly as U; the map z -> -z is represented as (-I, 0).
CVec involution_factor(const CVec& a, const CVec& z) {
  const double na2 = a.squaredNorm();
  if (na2 == 0.0) return z;
  const Complex ip = a.dot(z);  // <z,a> = sum z_l conj(a_l)
  const double s = std::sqrt(std::max(0.0, 1.0 - na2));
  const CVec pz = (ip / na2) * a;
  const CVec qz = z - pz;
  return (a - pz - s * qz) / (1.0 - ip);
}

CVec raw_apply(const MobiusAutomorphism& phi, const CVec& z) {
  return phi.unitary_part() * involution_factor(phi.center().coords(), z);
}

constexpr double kIdentityTol = 1e-10;
constexpr double kInteriorBand = 1e-6;
constexpr double kMatchTol = 1e-8;
constexpr double kDifferTol = 1e-6;

}  // namespace

BallPoint::BallPoint(CVec coords) : coords_(std::move(coords)) {
  require(coords_.size() >= 1, ErrorCode::InvalidArgument,
          "ball point needs dimension >= 1");
  require(coords_.norm() <= 1.0 + 1e-12, ErrorCode::InvalidArgument,
          "ball point has norm > 1");
}

BallPoint BallPoint::zero(int n) { return BallPoint(CVec::Zero(n)); }

double distance(const BallPoint& a, const BallPoint& b) {
  require(a.dim() == b.dim(), ErrorCode::DimensionMismatch,
          "points of different dimension");
  return (a.coords() - b.coords()).norm();
}

MobiusAutomorphism::MobiusAutomorphism(CMat unitary, BallPoint center)
    : n_(center.dim()), unitary_(std::move(unitary)), center_(std::move(center)) {
  require(unitary_.rows() == n_ && unitary_.cols() == n_,
          ErrorCode::DimensionMismatch, "unitary part has wrong size");
  require(unitary_defect(unitary_) <= 1e-10, ErrorCode::InvalidArgument,
          "unitary part is not unitary within 1e-10");
  require(center_.norm() < 1.0, ErrorCode::CenterNotInterior,
          "center must lie in the open ball");
}

MobiusAutomorphism MobiusAutomorphism::identity(int n) {
  return MobiusAutomorphism(CMat::Identity(n, n), BallPoint::zero(n));
}

const char* to_string(AutomorphismType t) noexcept {
  switch (t) {
    case AutomorphismType::Identity: return "identity";
    case AutomorphismType::Elliptic: return "elliptic";
    case AutomorphismType::Parabolic: return "parabolic";
    case AutomorphismType::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

const char* to_string(ConjugacyOutcome v) noexcept {
  switch (v) {
    case ConjugacyOutcome::Conjugate: return "Conjugate";
    case ConjugacyOutcome::NotConjugate: return "NotConjugate";
    case ConjugacyOutcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

MobiusAutomorphism involution(const BallPoint& a) {
  require(a.norm() < 1.0 - 1e-12, ErrorCode::CenterNotInterior,
          "involution center must be interior");
  // At a = 0 the involution formula collapses to the antipode z -> -z,
  // which the canonical form carries in the unitary slot.
  if (a.norm() == 0.0)
    return MobiusAutomorphism(-CMat::Identity(a.dim(), a.dim()), a);
  return MobiusAutomorphism(CMat::Identity(a.dim(), a.dim()), a);
}

BallPoint apply(const MobiusAutomorphism& phi, const BallPoint& z) {
  require(phi.dim() == z.dim(), ErrorCode::DimensionMismatch,
          "automorphism and point dimensions differ");
  return BallPoint(raw_apply(phi, z.coords()));
}

MobiusAutomorphism inverse(const MobiusAutomorphism& phi) {
  // (U phi_a)^{-1} = phi_a U* = U* phi_{Ua}.
  return MobiusAutomorphism(phi.unitary_part().adjoint(),
                            BallPoint(phi.unitary_part() * phi.center().coords()));
}

MobiusAutomorphism compose(const MobiusAutomorphism& phi,
                           const MobiusAutomorphism& psi) {
  require(phi.dim() == psi.dim(), ErrorCode::DimensionMismatch,
          "cannot compose automorphisms of different dimension");
  const int n = phi.dim();
  // The composite chi = phi o psi sends c := psi^{-1}(phi^{-1}(0)) to 0, and
  // phi^{-1}(0) is just the center of phi.  A numerically vanishing center
  // snaps to the exact origin so the unitary slot holds the honest linear
  // part (the involution factor is discontinuous at a = 0).
  BallPoint c = apply(inverse(psi), phi.center());
  if (c.norm() <= 1e-12) c = BallPoint::zero(n);
  // chi o phi_c fixes 0, hence is linear (Cartan) and equal to a unitary W;
  // sample it on the half-basis.
  const CVec cc = c.coords();
  CMat w(n, n);
  for (int j = 0; j < n; ++j) {
    CVec e = CVec::Zero(n);
    e(j) = 0.5;
    const CVec x = involution_factor(cc, e);
    w.col(j) = 2.0 * raw_apply(phi, raw_apply(psi, x));
  }
  require(unitary_defect(w) <= 1e-8, ErrorCode::NormalizationFailure,
          "composition did not produce a unitary linear part");
  return MobiusAutomorphism(nearest_unitary(w), c);
}

CVec AutomorphismLift::chart_apply(const CVec& z) const {
  const int n = dim();
  CVec h(n + 1);
  h.head(n) = z;
  h(n) = 1.0;
  CVec w = matrix * h;
  require(std::abs(w(n)) > 1e-13, ErrorCode::DegenerateEigenproblem,
          "chart action undefined at this point");
  return w.head(n) / w(n);
}

double AutomorphismLift::form_residual() const { return max_abs(form_defect(matrix)); }

AutomorphismLift lift(const MobiusAutomorphism& phi) {
  const int n = phi.dim();
  const CVec a = phi.center().coords();
  const double na2 = a.squaredNorm();
  CMat m = CMat::Zero(n + 1, n + 1);
  if (na2 == 0.0) {
    m.topLeftCorner(n, n) = phi.unitary_part();
    m(n, n) = 1.0;
  } else {
    const double s = std::sqrt(1.0 - na2);
    const CMat p = (a * a.adjoint()) / na2;
    const CMat q = CMat::Identity(n, n) - p;
    CMat ma = CMat::Zero(n + 1, n + 1);
    ma.topLeftCorner(n, n) = -(p + s * q);
    ma.topRightCorner(n, 1) = a;
    ma.bottomLeftCorner(1, n) = -a.adjoint();
    ma(n, n) = 1.0;
    m.topLeftCorner(n, n) = phi.unitary_part();
    m(n, n) = 1.0;
    m = m * ma;
  }
  // Normalize M*JM = cJ down to c = 1; c is read off the corner entry.
  const CMat g = form_gram(m);
  const double c = -g(n, n).real();
  require(c > 0.0, ErrorCode::NormalizationFailure, "lift form scale not positive");
  m /= std::sqrt(c);
  AutomorphismLift out{m};
  require(out.form_residual() <= 1e-8, ErrorCode::NormalizationFailure,
          "lift does not preserve the form");
  return out;
}

MobiusAutomorphism automorphism_from_lift(const CMat& matrix) {
  const int n = static_cast<int>(matrix.rows()) - 1;
  require(matrix.cols() == n + 1 && n >= 1, ErrorCode::WrongShape,
          "lift matrix must be square of size n+1");
  CMat m = matrix;
  const CMat g = form_gram(m);
  const double c = -g(n, n).real();
  require(c > 0.0, ErrorCode::NormalizationFailure, "matrix does not scale the form positively");
  m /= std::sqrt(c);
  AutomorphismLift l{m};
  require(l.form_residual() <= 1e-8, ErrorCode::NormalizationFailure,
          "matrix does not preserve the form");

  // The center is the chart preimage of 0.
  CVec e = CVec::Zero(n + 1);
  e(n) = 1.0;
  CVec h = m.partialPivLu().solve(e);
  require(std::abs(h(n)) > 1e-13, ErrorCode::NormalizationFailure,
          "lift has no chart preimage of the origin");
  BallPoint center(CVec(h.head(n) / h(n)));
  if (center.norm() <= 1e-12) center = BallPoint::zero(n);
  require(center.norm() < 1.0 - 1e-12, ErrorCode::NormalizationFailure,
          "recovered center is not interior");

  const CVec cc = center.coords();
  CMat w(n, n);
  for (int j = 0; j < n; ++j) {
    CVec ej = CVec::Zero(n);
    ej(j) = 0.5;
    w.col(j) = 2.0 * l.chart_apply(involution_factor(cc, ej));
  }
  require(unitary_defect(w) <= 1e-8, ErrorCode::NormalizationFailure,
          "chart action is not an automorphism");
  MobiusAutomorphism out(nearest_unitary(w), center);

  for (const auto& p : probe_points(n, 4, 0x11f7)) {
    require((raw_apply(out, p.coords()) - l.chart_apply(p.coords())).norm() <= 1e-9,
            ErrorCode::NormalizationFailure, "canonical form disagrees with chart action");
  }
  return out;
}

std::vector<BallPoint> probe_points(int n, int count, std::uint64_t salt) {
  Rng rng(0xb411c0deULL ^ (static_cast<std::uint64_t>(n) * 1315423911ULL) ^ salt);
  std::vector<BallPoint> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i)
    pts.emplace_back(random_interior_vector(rng, n, 0.8));
  return pts;
}

bool is_identity(const MobiusAutomorphism& phi) {
  for (const auto& p : probe_points(phi.dim(), 16, 0x1d)) {
    if ((raw_apply(phi, p.coords()) - p.coords()).norm() > kIdentityTol) return false;
  }
  return true;
}

std::vector<Complex> LiftSpectral::eigenvalue_list() const {
  std::vector<Complex> out;
  for (const auto& c : clusters)
    for (int i = 0; i < c.multiplicity; ++i) out.push_back(c.lambda);
  return out;
}

std::vector<int> LiftSpectral::jordan_list() const {
  std::vector<int> out;
  for (const auto& c : clusters)
    out.insert(out.end(), c.jordan_sizes.begin(), c.jordan_sizes.end());
  std::sort(out.begin(), out.end());
  return out;
}

LiftSpectral lift_spectral(const CMat& m, double cluster_tol) {
  const int sz = static_cast<int>(m.rows());
  Eigen::ComplexEigenSolver<CMat> es(m, /*computeEigenvectors=*/false);
  require(es.info() == Eigen::Success, ErrorCode::DegenerateEigenproblem,
          "eigenvalue iteration failed");
  std::vector<Complex> vals(es.eigenvalues().data(), es.eigenvalues().data() + sz);

  LiftSpectral out;
  for (const auto& group : cluster_values(vals, cluster_tol)) {
    LiftSpectral::Cluster cl;
    Complex mean = 0.0;
    for (int idx : group) mean += vals[idx];
    // The cluster mean of a perturbed Jordan block recovers the true
    // eigenvalue to machine precision (the trace is exact), so the null
    // space below is well conditioned even for defective eigenvalues.
    cl.lambda = mean / static_cast<double>(group.size());
    cl.multiplicity = static_cast<int>(group.size());
    const CMat shifted = m - cl.lambda * CMat::Identity(sz, sz);
    for (double tol : {1e-10, 1e-8, 1e-6}) {
      cl.eigenvectors = nullspace(shifted, tol);
      if (cl.eigenvectors.cols() > 0) break;
    }
    // Jordan sizes from kernel dimensions of powers.
    std::vector<int> kernel_dims;  // kernel_dims[mu-1] = dim ker(shifted^mu)
    CMat power = shifted;
    for (int mu = 1; mu <= cl.multiplicity; ++mu) {
      kernel_dims.push_back(sz - numerical_rank(power, 1e-7));
      if (mu < cl.multiplicity) power = power * shifted;
    }
    std::vector<int> ge(cl.multiplicity + 2, 0);  // # blocks of size >= mu
    int prev = 0;
    for (int mu = 1; mu <= cl.multiplicity; ++mu) {
      ge[mu] = kernel_dims[mu - 1] - prev;
      prev = kernel_dims[mu - 1];
    }
    for (int s = 1; s <= cl.multiplicity; ++s)
      for (int rep = 0; rep < ge[s] - ge[s + 1]; ++rep) cl.jordan_sizes.push_back(s);
    out.clusters.push_back(std::move(cl));
  }
  return out;
}

namespace {

struct FixedSetCandidates {
  std::optional<AffineSet> interior;
  std::vector<BallPoint> boundary;
};

std::optional<FixedPointData> try_fixed_sets(const MobiusAutomorphism& phi,
                                             const CMat& m, double cluster_tol) {
  const int n = phi.dim();
  FixedSetCandidates cand;
  const LiftSpectral spec = lift_spectral(m, cluster_tol);
  for (const auto& cl : spec.clusters) {
    const CMat& ns = cl.eigenvectors;
    const int d = static_cast<int>(ns.cols());
    if (d == 0) continue;
    // Reduce the eigenspace to its chart slice {v : v_last = 1}.
    int pivot = -1;
    double best = 0.0;
    for (int j = 0; j < d; ++j) {
      const double a = std::abs(ns(n, j));
      if (a > best) {
        best = a;
        pivot = j;
      }
    }
    if (pivot < 0 || best < 1e-10) continue;  // eigenspace at infinity
    const CVec u0 = ns.col(pivot) / ns(n, pivot);
    const CVec base = u0.head(n);
    CMat dirs(n, d - 1);
    int col = 0;
    for (int j = 0; j < d; ++j) {
      if (j == pivot) continue;
      const CVec v = ns.col(j) - ns(n, j) * u0;
      dirs.col(col++) = v.head(n);
    }
    CMat w(n, 0);
    if (d > 1) {
      Eigen::HouseholderQR<CMat> qr(dirs);
      CMat q = qr.householderQ();
      w = q.leftCols(d - 1);
    }
    const CVec nearest = base - w * (w.adjoint() * base);
    const double r = nearest.norm();
    if (r < 1.0 - kInteriorBand) {
      AffineSet set{BallPoint(nearest), w};
      if (!cand.interior || set.dim() > cand.interior->dim())
        cand.interior = std::move(set);
    } else if (r <= 1.0 + kInteriorBand) {
      BallPoint p(CVec(nearest / r));
      bool fresh = true;
      for (const auto& q : cand.boundary)
        if (distance(q, p) <= 1e-8) fresh = false;
      if (fresh) cand.boundary.push_back(std::move(p));
    }
  }

  auto fixed_ok = [&phi](const BallPoint& p) {
    return (raw_apply(phi, p.coords()) - p.coords()).norm() <= 1e-9;
  };

  FixedPointData out;
  if (cand.interior) {
    if (!cand.boundary.empty()) return std::nullopt;  // inconsistent census
    if (!fixed_ok(cand.interior->base)) return std::nullopt;
    const double margin = 0.3 * (1.0 - cand.interior->base.norm());
    for (int j = 0; j < cand.interior->dim(); ++j) {
      const CVec sample =
          cand.interior->base.coords() + margin * cand.interior->directions.col(j);
      if (!fixed_ok(BallPoint(sample))) return std::nullopt;
    }
    out.interior_set = cand.interior;
    out.type = AutomorphismType::Elliptic;
    return out;
  }
  for (const auto& p : cand.boundary)
    if (!fixed_ok(p)) return std::nullopt;
  if (cand.boundary.size() == 1) {
    out.boundary_points = cand.boundary;
    out.type = AutomorphismType::Parabolic;
    return out;
  }
  if (cand.boundary.size() == 2) {
    out.boundary_points = cand.boundary;
    out.type = AutomorphismType::Hyperbolic;
    return out;
  }
  return std::nullopt;
}

}  // namespace

FixedPointData fixed_points(const MobiusAutomorphism& phi) {
  const int n = phi.dim();
  if (is_identity(phi)) {
    FixedPointData out;
    out.interior_set = AffineSet{BallPoint::zero(n), CMat::Identity(n, n)};
    out.type = AutomorphismType::Identity;
    return out;
  }
  const AutomorphismLift l = lift(phi);
  for (double ctol : {1e-5, 1e-12}) {
    if (auto out = try_fixed_sets(phi, l.matrix, ctol)) return *out;
  }
  fail(ErrorCode::DegenerateEigenproblem,
       "could not resolve the fixed point set of the automorphism");
}

AutomorphismType classify(const MobiusAutomorphism& phi) {
  return fixed_points(phi).type;
}

double conjugation_residual(const MobiusAutomorphism& gamma,
                            const MobiusAutomorphism& phi1,
                            const MobiusAutomorphism& phi2, int samples) {
  const MobiusAutomorphism chi = compose(compose(gamma, phi1), inverse(gamma));
  double worst = 0.0;
  for (const auto& p : probe_points(phi1.dim(), samples, 0xc0471)) {
    worst = std::max(worst,
                     (raw_apply(chi, p.coords()) - raw_apply(phi2, p.coords())).norm());
  }
  return worst;
}

namespace {

double map_distance(const MobiusAutomorphism& a, const MobiusAutomorphism& b) {
  double worst = 0.0;
  for (const auto& p : probe_points(a.dim(), 16, 0x7a11))
    worst = std::max(worst, (raw_apply(a, p.coords()) - raw_apply(b, p.coords())).norm());
  return worst;
}

ConjugacyVerdict conjugate_with(const MobiusAutomorphism& gamma,
                                const MobiusAutomorphism& f1,
                                const MobiusAutomorphism& f2) {
  ConjugacyVerdict v;
  v.verdict = ConjugacyOutcome::Conjugate;
  v.certificate = gamma;
  v.certificate_residual = conjugation_residual(gamma, f1, f2);
  return v;
}

ConjugacyVerdict not_conjugate(InvariantMismatch mm) {
  ConjugacyVerdict v;
  v.verdict = ConjugacyOutcome::NotConjugate;
  v.mismatch = std::move(mm);
  return v;
}

ConjugacyVerdict inconclusive() {
  ConjugacyVerdict v;
  v.verdict = ConjugacyOutcome::Inconclusive;
  return v;
}

/// Conjugate phi by the involution at q so the interior fixed point q moves
/// to the origin; the result is the unitary derivative representative.
MobiusAutomorphism normalize_at(const MobiusAutomorphism& phi, const BallPoint& q) {
  const MobiusAutomorphism inv = involution(q);
  return compose(inv, compose(phi, inv));
}

struct SchurSpectrum {
  std::vector<Complex> values;
  CMat vectors;  // unitary; columns are the (numerically) diagonalizing basis
};

SchurSpectrum unitary_spectrum(const CMat& u) {
  Eigen::ComplexSchur<CMat> schur(u);
  require(schur.info() == Eigen::Success, ErrorCode::DegenerateEigenproblem,
          "Schur iteration failed");
  SchurSpectrum out;
  out.vectors = schur.matrixU();
  const CMat& t = schur.matrixT();
  for (Eigen::Index i = 0; i < t.rows(); ++i) out.values.push_back(t(i, i));
  return out;
}

ConjugacyVerdict elliptic_conjugacy(const MobiusAutomorphism& f1,
                                    const MobiusAutomorphism& f2,
                                    const FixedPointData& fp1,
                                    const FixedPointData& fp2) {
  const BallPoint q1 = fp1.interior_set->base;
  const BallPoint q2 = fp2.interior_set->base;
  const MobiusAutomorphism u1 = normalize_at(f1, q1);
  const MobiusAutomorphism u2 = normalize_at(f2, q2);
  const SchurSpectrum s1 = unitary_spectrum(u1.unitary_part());
  const SchurSpectrum s2 = unitary_spectrum(u2.unitary_part());

  const auto sigma = match_multisets(s1.values, s2.values, kMatchTol);
  if (!sigma) {
    InvariantMismatch mm;
    mm.invariant = "derivative-spectrum";
    mm.detail = "eigenvalue multisets of the normalized unitaries differ";
    mm.left_spectrum = s1.values;
    mm.right_spectrum = s2.values;
    mm.gap = multiset_gap(s1.values, s2.values);
    return not_conjugate(std::move(mm));
  }

  const int n = f1.dim();
  CMat perm = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) perm((*sigma)[i], i) = 1.0;
  const CMat v = s2.vectors * perm * s1.vectors.adjoint();
  const MobiusAutomorphism gamma =
      compose(involution(q2),
              compose(MobiusAutomorphism(nearest_unitary(v), BallPoint::zero(n)),
                      involution(q1)));
  ConjugacyVerdict out = conjugate_with(gamma, f1, f2);
  require(out.certificate_residual <= 1e-8, ErrorCode::NormalizationFailure,
          "elliptic conjugacy certificate failed verification");
  return out;
}

std::vector<Complex> spectrum_ratios(const std::vector<Complex>& ev) {
  std::vector<Complex> out;
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = 0; j < ev.size(); ++j)
      if (i != j) out.push_back(ev[i] / ev[j]);
  return out;
}

/// Certificate construction for semisimple lifts: align matched eigenspaces
/// after normalizing their J-Gram matrices to a common canonical shape, so
/// the change of basis is itself form preserving.
ConjugacyVerdict hyperbolic_conjugacy(const MobiusAutomorphism& f1,
                                      const MobiusAutomorphism& f2) {
  const int n = f1.dim();
  const CMat m1 = lift(f1).matrix;
  const CMat m2 = lift(f2).matrix;
  const LiftSpectral sp1 = lift_spectral(m1);
  const LiftSpectral sp2 = lift_spectral(m2);

  const auto jordan1 = sp1.jordan_list();
  const auto jordan2 = sp2.jordan_list();
  if (jordan1 != jordan2) {
    InvariantMismatch mm;
    mm.invariant = "jordan";
    mm.detail = "Jordan block size multisets of the lifts differ";
    mm.left_jordan = jordan1;
    mm.right_jordan = jordan2;
    mm.gap = 1.0;
    return not_conjugate(std::move(mm));
  }

  const auto ev1 = sp1.eigenvalue_list();
  const auto ev2 = sp2.eigenvalue_list();
  const double ratio_gap = multiset_gap(spectrum_ratios(ev1), spectrum_ratios(ev2));
  if (ratio_gap > kDifferTol) {
    InvariantMismatch mm;
    mm.invariant = "lift-spectrum";
    mm.detail = "projective eigenvalue ratio multisets differ";
    mm.left_spectrum = ev1;
    mm.right_spectrum = ev2;
    mm.gap = ratio_gap;
    return not_conjugate(std::move(mm));
  }
  if (ratio_gap > kMatchTol) return inconclusive();
  for (int s : jordan1)
    if (s != 1) return inconclusive();  // non-semisimple: no certificate attempted

  // Scalar alignment: lifts agree only projectively, so match the unique
  // largest-modulus eigenvalues to fix the unit scalar c.
  auto max_cluster = [](const LiftSpectral& sp) {
    int best = -1;
    for (std::size_t i = 0; i < sp.clusters.size(); ++i)
      if (best < 0 ||
          std::abs(sp.clusters[i].lambda) > std::abs(sp.clusters[best].lambda))
        best = static_cast<int>(i);
    return best;
  };
  const int top1 = max_cluster(sp1);
  const int top2 = max_cluster(sp2);
  if (top1 < 0 || top2 < 0) return inconclusive();
  const Complex c = sp2.clusters[top2].lambda / sp1.clusters[top1].lambda;
  if (std::abs(std::abs(c) - 1.0) > kMatchTol) return inconclusive();

  // Match clusters via lambda -> c*lambda.
  const std::size_t k1 = sp1.clusters.size();
  if (k1 != sp2.clusters.size()) return inconclusive();
  std::vector<int> match(k1, -1);
  std::vector<bool> used(k1, false);
  for (std::size_t i = 0; i < k1; ++i) {
    for (std::size_t j = 0; j < k1; ++j) {
      if (used[j]) continue;
      if (std::abs(c * sp1.clusters[i].lambda - sp2.clusters[j].lambda) <= 1e-6 &&
          sp1.clusters[i].multiplicity == sp2.clusters[j].multiplicity) {
        match[i] = static_cast<int>(j);
        used[j] = true;
        break;
      }
    }
    if (match[i] < 0) return inconclusive();
  }

  // J-normalize each eigenbasis: expanding/contracting eigenvectors form an
  // isotropic pair normalized to pairing 1; unit-modulus eigenspaces carry a
  // positive definite J-Gram and are J-orthonormalized via Cholesky.
  auto assemble = [n](const LiftSpectral& sp,
                      const std::vector<int>& order) -> std::optional<CMat> {
    int contracting = -1, expanding = -1;
    for (int idx : order) {
      const double mod = std::abs(sp.clusters[idx].lambda);
      if (mod > 1.0 + 1e-6) expanding = idx;
      if (mod < 1.0 - 1e-6) contracting = idx;
    }
    if (expanding < 0 || contracting < 0) return std::nullopt;
    if (sp.clusters[expanding].eigenvectors.cols() != 1 ||
        sp.clusters[contracting].eigenvectors.cols() != 1)
      return std::nullopt;
    CVec vp = sp.clusters[expanding].eigenvectors.col(0);
    const CVec vm = sp.clusters[contracting].eigenvectors.col(0);
    CVec jvp = vp;
    jvp(n) = -jvp(n);
    const Complex pairing = vm.dot(jvp);  // <v+, v->_J
    if (std::abs(pairing) < 1e-10) return std::nullopt;
    vp /= pairing;

    CMat basis(n + 1, n + 1);
    int col = 0;
    basis.col(col++) = vp;
    for (int idx : order) {
      if (idx == expanding || idx == contracting) continue;
      const CMat& vecs = sp.clusters[idx].eigenvectors;
      const int d = static_cast<int>(vecs.cols());
      if (d != sp.clusters[idx].multiplicity) return std::nullopt;
      CMat jv = vecs;
      jv.row(n) *= -1.0;
      const CMat gram = vecs.adjoint() * jv;
      Eigen::LLT<CMat> llt(gram);
      if (llt.info() != Eigen::Success) return std::nullopt;
      const CMat r = llt.matrixU();
      const CMat block = r.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(vecs);
      for (int j = 0; j < d; ++j) basis.col(col++) = block.col(j);
    }
    basis.col(col++) = vm;
    if (col != n + 1) return std::nullopt;
    return basis;
  };

  std::vector<int> order1, order2;
  for (std::size_t i = 0; i < k1; ++i) order1.push_back(static_cast<int>(i));
  std::sort(order1.begin(), order1.end(), [&](int a, int b) {
    return std::abs(sp1.clusters[a].lambda) > std::abs(sp1.clusters[b].lambda);
  });
  for (int idx : order1) order2.push_back(match[idx]);

  const auto basis1 = assemble(sp1, order1);
  const auto basis2 = assemble(sp2, order2);
  if (!basis1 || !basis2) return inconclusive();

  const CMat l = *basis2 * basis1->inverse();
  if (max_abs(form_defect(l)) > 1e-8) return inconclusive();

  MobiusAutomorphism gamma = MobiusAutomorphism::identity(n);
  try {
    gamma = automorphism_from_lift(l);
  } catch (const Error&) {
    return inconclusive();
  }
  ConjugacyVerdict out = conjugate_with(gamma, f1, f2);
  if (out.certificate_residual > 1e-8) return inconclusive();
  return out;
}

ConjugacyVerdict parabolic_invariants(const MobiusAutomorphism& f1,
                                      const MobiusAutomorphism& f2) {
  const LiftSpectral sp1 = lift_spectral(lift(f1).matrix);
  const LiftSpectral sp2 = lift_spectral(lift(f2).matrix);
  const auto jordan1 = sp1.jordan_list();
  const auto jordan2 = sp2.jordan_list();
  if (jordan1 != jordan2) {
    InvariantMismatch mm;
    mm.invariant = "jordan";
    mm.detail = "Jordan block size multisets of the lifts differ";
    mm.left_jordan = jordan1;
    mm.right_jordan = jordan2;
    mm.gap = 1.0;
    return not_conjugate(std::move(mm));
  }
  const auto ev1 = sp1.eigenvalue_list();
  const auto ev2 = sp2.eigenvalue_list();
  const double gap = multiset_gap(spectrum_ratios(ev1), spectrum_ratios(ev2));
  if (gap > kDifferTol) {
    InvariantMismatch mm;
    mm.invariant = "lift-spectrum";
    mm.detail = "projective eigenvalue ratio multisets differ";
    mm.left_spectrum = ev1;
    mm.right_spectrum = ev2;
    mm.gap = gap;
    return not_conjugate(std::move(mm));
  }
  // Equal invariants: soundness over completeness, no certificate attempted.
  return inconclusive();
}

}  // namespace

ConjugacyVerdict are_conjugate(const MobiusAutomorphism& phi1,
                               const MobiusAutomorphism& phi2) {
  require(phi1.dim() == phi2.dim(), ErrorCode::DimensionMismatch,
          "automorphisms live on balls of different dimension");

  if (map_distance(phi1, phi2) <= kIdentityTol)
    return conjugate_with(MobiusAutomorphism::identity(phi1.dim()), phi1, phi2);

  const FixedPointData fp1 = fixed_points(phi1);
  const FixedPointData fp2 = fixed_points(phi2);
  if (fp1.type != fp2.type) {
    InvariantMismatch mm;
    mm.invariant = "type";
    mm.detail = std::string(to_string(fp1.type)) + " vs " + to_string(fp2.type);
    mm.gap = 1.0;
    return not_conjugate(std::move(mm));
  }
  switch (fp1.type) {
    case AutomorphismType::Identity:
      return conjugate_with(MobiusAutomorphism::identity(phi1.dim()), phi1, phi2);
    case AutomorphismType::Elliptic:
      return elliptic_conjugacy(phi1, phi2, fp1, fp2);
    case AutomorphismType::Hyperbolic:
      return hyperbolic_conjugacy(phi1, phi2);
    case AutomorphismType::Parabolic:
      return parabolic_invariants(phi1, phi2);
  }
  return inconclusive();
}

MobiusAutomorphism random_automorphism(std::uint64_t seed, int n,
                                       std::optional<AutomorphismType> type_hint) {
  require(n >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
  Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n + 1)));
  if (!type_hint) {
    const CMat u = random_unitary(rng, n);
    return MobiusAutomorphism(u, BallPoint(random_interior_vector(rng, n, 0.6)));
  }
  switch (*type_hint) {
    case AutomorphismType::Identity:
      return MobiusAutomorphism::identity(n);
    case AutomorphismType::Elliptic: {
      const CMat u = random_unitary_separated(rng, n, 0.25);
      const MobiusAutomorphism rotation(u, BallPoint::zero(n));
      const MobiusAutomorphism inv =
          involution(BallPoint(random_interior_vector(rng, n, 0.6)));
      return compose(inv, compose(rotation, inv));
    }
    case AutomorphismType::Hyperbolic: {
      const double r = rng.uniform(1.3, 2.5);
      CMat m = CMat::Identity(n + 1, n + 1);
      m(0, 0) = m(n, n) = (r + 1.0 / r) / 2.0;
      m(0, n) = m(n, 0) = (r - 1.0 / r) / 2.0;
      if (n >= 2)
        m.block(1, 1, n - 1, n - 1) = random_unitary_separated(rng, n - 1, 0.25);
      const MobiusAutomorphism base = automorphism_from_lift(m);
      const MobiusAutomorphism gamma(random_unitary(rng, n),
                                     BallPoint(random_interior_vector(rng, n, 0.5)));
      return compose(gamma, compose(base, inverse(gamma)));
    }
    case AutomorphismType::Parabolic: {
      const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      const Complex ia(0.0, sign * rng.uniform(0.5, 2.0));
      CMat m = CMat::Identity(n + 1, n + 1);
      m(0, 0) = 1.0 + ia;
      m(0, n) = -ia;
      m(n, 0) = ia;
      m(n, n) = 1.0 - ia;
      if (n >= 2)
        m.block(1, 1, n - 1, n - 1) = random_unitary_separated(rng, n - 1, 0.25);
      const MobiusAutomorphism base = automorphism_from_lift(m);
      const MobiusAutomorphism gamma(random_unitary(rng, n),
                                     BallPoint(random_interior_vector(rng, n, 0.5)));
      return compose(gamma, compose(base, inverse(gamma)));
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown type hint");
}

}  // namespace ncball::cball
