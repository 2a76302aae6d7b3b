#include "ncball/json_io.hpp"

#include <cstdio>

#include "ncball/errors.hpp"

namespace ncball::jsonio {

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& message) {
  fail(ErrorCode::SchemaViolation, "at " + (path.empty() ? "/" : path) + ": " + message);
}

}  // namespace

json encode(Complex z) { return json::array({z.real(), z.imag()}); }

json encode(const CVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(encode(v(i)));
  return out;
}

json encode(const CMat& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

json encode(const cball::BallPoint& p) { return encode(p.coords()); }

json encode(const cball::MobiusAutomorphism& phi) {
  return json{{"n", phi.dim()},
              {"unitary", encode(phi.unitary_part())},
              {"center", encode(phi.center())}};
}

json encode(const cball::AffineSet& set) {
  json dirs = json::array();
  for (Eigen::Index j = 0; j < set.directions.cols(); ++j)
    dirs.push_back(encode(CVec(set.directions.col(j))));
  return json{{"base", encode(set.base)}, {"directions", dirs}, {"dim", set.dim()}};
}

json encode(const cball::FixedPointData& data) {
  json out{{"type", cball::to_string(data.type)}};
  out["interior"] = data.interior_set ? encode(*data.interior_set) : json(nullptr);
  json boundary = json::array();
  for (const auto& p : data.boundary_points) boundary.push_back(encode(p));
  out["boundary"] = std::move(boundary);
  return out;
}

json encode(const cball::ConjugacyVerdict& verdict) {
  json out{{"verdict", cball::to_string(verdict.verdict)}};
  if (verdict.certificate) {
    out["certificate"] = encode(*verdict.certificate);
    out["certificate_residual"] = verdict.certificate_residual;
  }
  if (verdict.mismatch) {
    const auto& mm = *verdict.mismatch;
    json spectra = json::object();
    json left = json::array(), right = json::array();
    for (Complex v : mm.left_spectrum) left.push_back(encode(v));
    for (Complex v : mm.right_spectrum) right.push_back(encode(v));
    out["mismatch"] = json{{"invariant", mm.invariant},
                           {"detail", mm.detail},
                           {"left_spectrum", left},
                           {"right_spectrum", right},
                           {"left_jordan", mm.left_jordan},
                           {"right_jordan", mm.right_jordan},
                           {"gap", mm.gap}};
  }
  return out;
}

json encode(const freepoly::Word& w) { return json(w.letters); }

json encode(const freepoly::FreePolynomial& p) {
  json terms = json::array();
  for (const auto& [w, c] : p.terms())
    terms.push_back(json{{"word", encode(w)}, {"coeff", encode(c)}});
  return json{{"n", p.letters()}, {"terms", terms}};
}

json encode(const freepoly::MatrixTuple& t) {
  json mats = json::array();
  for (const auto& m : t.mats) mats.push_back(encode(m));
  return mats;
}

json encode(const dshift::CPoly& f) {
  json terms = json::array();
  for (const auto& [alpha, c] : f.terms())
    terms.push_back(json{{"alpha", alpha.exps}, {"coeff", encode(c)}});
  return json{{"d", f.vars()}, {"terms", terms}};
}

json encode(const dshift::CommutingPair2x2& pair) {
  return json{{"x", encode(pair.x)}, {"y", encode(pair.y)}, {"t", encode(pair.t)}};
}

json encode(const semicrossed::SemicrossedElement& x) {
  json coeffs = json::array();
  for (const auto& [m, poly] : x.coeffs())
    coeffs.push_back(json{{"m", m}, {"poly", encode(poly)}});
  return json{{"n", x.letters()}, {"coeffs", coeffs}};
}

json encode(const semicrossed::CensusReport& report) {
  json sets = json::array();
  for (const auto& s : report.sets) {
    json item{{"kind", semicrossed::to_string(s.kind)}, {"dimension", s.dimension}};
    if (s.fixed_set) item["fixed_set"] = encode(*s.fixed_set);
    if (s.circle_family) item["circle_family"] = true;
    if (s.boundary_point) item["boundary_point"] = encode(*s.boundary_point);
    sets.push_back(std::move(item));
  }
  return json{{"n", report.n}, {"sets", sets}};
}

json encode(const semicrossed::CovariantPair& pair) {
  json gens = json::array();
  for (const auto& g : pair.generator_images) gens.push_back(encode(g));
  json out{{"n", pair.n}, {"generators", gens}, {"k", encode(pair.k_image)}};
  if (pair.diagonal_points) {
    json pts = json::array();
    for (const auto& p : *pair.diagonal_points) pts.push_back(encode(p));
    out["diagonal_points"] = std::move(pts);
  }
  return out;
}

json encode(const semicrossed::ZeroUCertificate& cert) {
  json pts = json::array(), images = json::array();
  for (const auto& p : cert.points) pts.push_back(encode(p));
  for (const auto& p : cert.images) images.push_back(encode(p));
  json transcript = json::array();
  for (const auto& e : cert.transcript)
    transcript.push_back(json{{"row", e.row},
                              {"col", e.col},
                              {"witness", encode(e.witness)},
                              {"pivot", e.pivot}});
  return json{{"n", cert.n},
              {"phi", encode(cert.phi)},
              {"points", pts},
              {"images", images},
              {"transcript", transcript}};
}

json encode(const semicrossed::IsomorphismReport& report) {
  return json{{"verdict", semicrossed::to_string(report.verdict)},
              {"conjugacy", encode(report.conjugacy)},
              {"census1", encode(report.census1)},
              {"census2", encode(report.census2)}};
}

json encode(const nestrep::NestRepresentation& rep) {
  json pts = json::array();
  for (const auto& p : rep.diagonal_points) pts.push_back(encode(p));
  json gens = json::array();
  for (const auto& g : rep.generator_images) gens.push_back(encode(g));
  return json{{"points", pts},
              {"word", encode(rep.word)},
              {"delta", rep.delta},
              {"matrices", json{{"generators", gens}, {"u", encode(rep.u_image)}}}};
}

json encode(const nestrep::SeparationWitness& witness) {
  json pts = json::array();
  for (const auto& p : witness.perturbed_points) pts.push_back(encode(p));
  return json{{"word", encode(witness.word)},
              {"perturbed_points", pts},
              {"rep", encode(witness.rep)},
              {"entry", json::array({witness.row, witness.col})},
              {"value", encode(witness.value)}};
}

const json& expect_field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema_fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_fail(path + "/" + key, "missing field");
  return *it;
}

int expect_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_fail(path, "expected an integer");
  return j.get<int>();
}

double expect_double(const json& j, const std::string& path) {
  if (!j.is_number()) schema_fail(path, "expected a number");
  return j.get<double>();
}

Complex decode_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema_fail(path, "expected [re, im]");
  return {expect_double(j[0], path + "/0"), expect_double(j[1], path + "/1")};
}

CVec decode_cvec(const json& j, const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected an array of complex pairs");
  CVec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = decode_complex(j[i], path + "/" + std::to_string(i));
  return v;
}

CMat decode_cmat(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_fail(path, "expected a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  CMat m;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_path = path + "/" + std::to_string(i);
    const CVec row = decode_cvec(j[i], row_path);
    if (i == 0) {
      cols = row.size();
      m.resize(rows, cols);
    } else if (static_cast<std::size_t>(row.size()) != cols) {
      schema_fail(row_path, "ragged matrix rows");
    }
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

cball::BallPoint decode_point(const json& j, const std::string& path) {
  const CVec v = decode_cvec(j, path);
  if (v.size() == 0) schema_fail(path, "point needs dimension >= 1");
  if (v.norm() > 1.0 + 1e-12) schema_fail(path, "point has norm > 1");
  return cball::BallPoint(v);
}

cball::MobiusAutomorphism decode_automorphism(const json& j, const std::string& path) {
  const int n = expect_int(expect_field(j, "n", path), path + "/n");
  if (n < 1) schema_fail(path + "/n", "dimension must be >= 1");
  const CMat u = decode_cmat(expect_field(j, "unitary", path), path + "/unitary");
  if (u.rows() != n || u.cols() != n)
    schema_fail(path + "/unitary", "expected an n x n matrix");
  const cball::BallPoint center =
      decode_point(expect_field(j, "center", path), path + "/center");
  if (center.dim() != n) schema_fail(path + "/center", "center has wrong dimension");
  if (unitary_defect(u) > 1e-10)
    schema_fail(path + "/unitary", "matrix is not unitary within 1e-10");
  if (!(center.norm() < 1.0 - 1e-12))
    schema_fail(path + "/center", "center must be interior");
  return cball::MobiusAutomorphism(u, center);
}

freepoly::Word decode_word(const json& j, const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected an array of letters");
  std::vector<int> letters;
  for (std::size_t i = 0; i < j.size(); ++i)
    letters.push_back(expect_int(j[i], path + "/" + std::to_string(i)));
  return freepoly::Word(std::move(letters));
}

freepoly::FreePolynomial decode_free_poly(const json& j, const std::string& path) {
  const int n = expect_int(expect_field(j, "n", path), path + "/n");
  if (n < 1) schema_fail(path + "/n", "letter count must be >= 1");
  freepoly::FreePolynomial p(n);
  const json& terms = expect_field(j, "terms", path);
  if (!terms.is_array()) schema_fail(path + "/terms", "expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string term_path = path + "/terms/" + std::to_string(i);
    const freepoly::Word w =
        decode_word(expect_field(terms[i], "word", term_path), term_path + "/word");
    for (int l : w.letters)
      if (l < 1 || l > n) schema_fail(term_path + "/word", "letter out of range");
    p.add_term(w, decode_complex(expect_field(terms[i], "coeff", term_path),
                                 term_path + "/coeff"));
  }
  return p;
}

dshift::CPoly decode_cpoly(const json& j, const std::string& path) {
  const int d = expect_int(expect_field(j, "d", path), path + "/d");
  if (d < 1) schema_fail(path + "/d", "variable count must be >= 1");
  dshift::CPoly f(d);
  const json& terms = expect_field(j, "terms", path);
  if (!terms.is_array()) schema_fail(path + "/terms", "expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string term_path = path + "/terms/" + std::to_string(i);
    const json& alpha = expect_field(terms[i], "alpha", term_path);
    if (!alpha.is_array() || alpha.size() != static_cast<std::size_t>(d))
      schema_fail(term_path + "/alpha", "expected d exponents");
    std::vector<int> exps;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      const int e = expect_int(alpha[k], term_path + "/alpha/" + std::to_string(k));
      if (e < 0) schema_fail(term_path + "/alpha", "negative exponent");
      exps.push_back(e);
    }
    f.add_term(dshift::MultiIndex(std::move(exps)),
               decode_complex(expect_field(terms[i], "coeff", term_path),
                              term_path + "/coeff"));
  }
  return f;
}

dshift::CommutingPair2x2 decode_commuting_pair(const json& j, const std::string& path) {
  return dshift::CommutingPair2x2(
      decode_point(expect_field(j, "x", path), path + "/x"),
      decode_point(expect_field(j, "y", path), path + "/y"),
      decode_complex(expect_field(j, "t", path), path + "/t"));
}

semicrossed::SemicrossedElement decode_element(const json& j, const std::string& path) {
  const int n = expect_int(expect_field(j, "n", path), path + "/n");
  if (n < 1) schema_fail(path + "/n", "letter count must be >= 1");
  semicrossed::SemicrossedElement x(n);
  const json& coeffs = expect_field(j, "coeffs", path);
  if (!coeffs.is_array()) schema_fail(path + "/coeffs", "expected an array");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string item_path = path + "/coeffs/" + std::to_string(i);
    const int m = expect_int(expect_field(coeffs[i], "m", item_path), item_path + "/m");
    if (m < 0) schema_fail(item_path + "/m", "U power must be >= 0");
    const freepoly::FreePolynomial poly =
        decode_free_poly(expect_field(coeffs[i], "poly", item_path), item_path + "/poly");
    if (poly.letters() != n) schema_fail(item_path + "/poly", "letter count differs");
    x.set_coefficient(m, poly + x.coefficient(m));
  }
  return x;
}

nestrep::NestRepresentation decode_rep(const json& j, const std::string& path) {
  const json& pts = expect_field(j, "points", path);
  if (!pts.is_array() || pts.empty()) schema_fail(path + "/points", "expected points");
  std::vector<cball::BallPoint> points;
  for (std::size_t i = 0; i < pts.size(); ++i)
    points.push_back(decode_point(pts[i], path + "/points/" + std::to_string(i)));
  const freepoly::Word w = decode_word(expect_field(j, "word", path), path + "/word");
  const double delta = expect_double(expect_field(j, "delta", path), path + "/delta");
  return nestrep::build_rho(points, w, delta);
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a:") + buf;
}

}  // namespace ncball::jsonio
