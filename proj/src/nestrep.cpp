#include "ncball/nestrep.hpp"

#include <algorithm>
#include <cmath>

#include "ncball/errors.hpp"

namespace ncball::nestrep {

PointSequence::PointSequence(std::vector<BallPoint> pts) : points(std::move(pts)) {
  for (const auto& p : points)
    require(p.interior(), ErrorCode::InvalidArgument,
            "point sequence entries must be interior");
}

double distance(const PointSequence& a, const PointSequence& b) {
  const std::size_t shared = std::min(a.points.size(), b.points.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < shared; ++i)
    sup = std::max(sup, cball::distance(a.points[i], b.points[i]));
  return sup;
}

NestRepresentation build_rho(const std::vector<BallPoint>& z, const Word& w,
                             double delta) {
  require(w.length() >= 2, ErrorCode::InvalidArgument,
          "defining word must have length >= 2");
  const int k = w.length();
  require(static_cast<int>(z.size()) == k + 1, ErrorCode::InvalidArgument,
          "need exactly k+1 diagonal points");
  require(delta > 0.0 && delta < 1.0, ErrorCode::DeltaOutOfRange,
          "delta must lie in (0,1)");
  const int n = z[0].dim();
  for (const auto& p : z) {
    require(p.dim() == n, ErrorCode::DimensionMismatch,
            "diagonal points of mixed dimension");
    require(p.norm() < delta, ErrorCode::PointsNotInDeltaBall,
            "diagonal points must lie in the open delta-ball");
  }
  for (int l : w.letters)
    require(l >= 1 && l <= n, ErrorCode::InvalidArgument, "word letter out of range");

  NestRepresentation rep;
  rep.n = n;
  rep.size = k + 1;
  rep.delta = delta;
  rep.word = w;
  rep.diagonal_points = z;
  rep.u_image = CMat::Zero(k + 1, k + 1);
  rep.generator_images.assign(n, CMat::Zero(k + 1, k + 1));
  for (int j = 1; j <= n; ++j) {
    CMat& g = rep.generator_images[j - 1];
    for (int i = 0; i <= k; ++i) g(i, i) = z[i][j - 1];
    for (int i = 0; i < k; ++i)
      if (w.letters[i] == j) g(i, i + 1) = 1.0 - delta;
  }
  return rep;
}

Complex corner_entry(const NestRepresentation& rep, const Word& v) {
  for (int l : v.letters)
    require(l >= 1 && l <= rep.n, ErrorCode::InvalidArgument,
            "word letter out of range");
  CMat prod = CMat::Identity(rep.size, rep.size);
  for (int l : v.letters) prod = prod * rep.generator_images[l - 1];
  return prod(0, rep.size - 1);
}

SurjectivityReport check_surjective(const NestRepresentation& rep) {
  SurjectivityReport report;
  report.dimension = unital_algebra_dimension(rep.generator_images);
  report.surjective = report.dimension == rep.size * (rep.size + 1) / 2;
  return report;
}

namespace {

std::vector<BallPoint> pad_points(const std::vector<BallPoint>& base, int count,
                                  int n) {
  std::vector<BallPoint> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (i < static_cast<int>(base.size())) {
      require(base[i].dim() == n, ErrorCode::DimensionMismatch,
              "base point dimension differs from the polynomial");
      out.push_back(base[i]);
    } else {
      out.push_back(BallPoint::zero(n));
    }
  }
  return out;
}

/// Perturb every point by at most eps in 2-norm (independent uniform
/// real/imaginary coordinate bumps).
std::vector<BallPoint> perturb(const std::vector<BallPoint>& base, double eps,
                               Rng& rng) {
  const int n = base[0].dim();
  const double comp = eps / std::sqrt(2.0 * n);
  std::vector<BallPoint> out;
  out.reserve(base.size());
  for (const auto& p : base) {
    CVec v = p.coords();
    for (int i = 0; i < n; ++i)
      v(i) += Complex(rng.uniform(-comp, comp), rng.uniform(-comp, comp));
    if (v.norm() >= 1.0 - 1e-6) return {};  // fell out of range; resample
    out.emplace_back(std::move(v));
  }
  return out;
}

bool coordinates_distinct(const std::vector<BallPoint>& pts, double tol) {
  std::vector<Complex> coords;
  for (const auto& p : pts)
    for (int i = 0; i < p.dim(); ++i) coords.push_back(p[i]);
  for (std::size_t a = 0; a < coords.size(); ++a)
    for (std::size_t b = a + 1; b < coords.size(); ++b)
      if (std::abs(coords[a] - coords[b]) <= tol) return false;
  return true;
}

double max_norm(const std::vector<BallPoint>& pts) {
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, p.norm());
  return r;
}

// Coefficients at rounding-noise level (commutator combinations cancel only
// up to the accumulation order) must not steer the branch choice: the
// witness floor is 1e-12, so anything below it is treated as zero.
constexpr double kCoeffFloor = 1e-12;

bool effectively_zero(const dshift::CPoly& f) {
  for (const auto& [alpha, c] : f.terms())
    if (std::abs(c) > kCoeffFloor) return false;
  return true;
}

Word minimal_significant_word(const FreePolynomial& p) {
  for (const auto& [w, c] : p.terms())  // graded-lex order
    if (std::abs(c) > kCoeffFloor) return w;
  return minimal_word(p);
}

}  // namespace

SeparationWitness separate(const FreePolynomial& a, const PointSequence& z,
                           double eps, std::uint64_t seed, int max_tries) {
  require(!a.is_zero(), ErrorCode::ZeroPolynomial, "cannot separate zero");
  require(eps > 0.0, ErrorCode::InvalidArgument, "need eps > 0");
  require(max_tries >= 1, ErrorCode::InvalidArgument, "need max_tries >= 1");
  const int n = a.letters();

  const dshift::CPoly abelian = abelianize(a);
  bool diagonal_branch = !effectively_zero(abelian);

  // In the commutator-ideal branch the minimal word has length >= 2: a
  // significant constant or linear coefficient would survive abelianization.
  Word w;
  if (diagonal_branch) {
    w = n >= 2 ? Word{{1, 2}} : Word{{1, 1}};
  } else {
    w = minimal_significant_word(a);
    if (w.length() < 2) {
      diagonal_branch = true;
      w = n >= 2 ? Word{{1, 2}} : Word{{1, 1}};
    }
  }
  const int k = w.length();
  const std::vector<BallPoint> base = pad_points(z.points, k + 1, n);

  Rng rng(seed);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    const std::vector<BallPoint> pts = perturb(base, eps, rng);
    if (pts.empty()) continue;
    if (!coordinates_distinct(pts, 1e-9)) continue;
    const double delta = (1.0 + max_norm(pts)) / 2.0;
    NestRepresentation rep = build_rho(pts, w, delta);
    const CMat image = eval_tuple(a, rep.tuple());
    SeparationWitness witness;
    witness.word = w;
    witness.perturbed_points = pts;
    if (diagonal_branch) {
      witness.row = 1;
      witness.col = 1;
      witness.value = image(0, 0);
    } else {
      witness.row = 1;
      witness.col = k + 1;
      witness.value = image(0, k);
    }
    if (std::abs(witness.value) > 1e-12) {
      witness.rep = std::move(rep);
      return witness;
    }
  }
  fail(ErrorCode::SearchExhausted, "no separating representation found");
}

CMat rep_eval(const NestRepresentation& rep,
              const semicrossed::SemicrossedElement& x) {
  require(rep.n == x.letters(), ErrorCode::DimensionMismatch,
          "element letter count differs from the representation");
  return eval_tuple(x.coefficient(0), rep.tuple());
}

}  // namespace ncball::nestrep
