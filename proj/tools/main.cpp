// Command line surface: JSON in, JSON report out.
//
// Exit codes: 0 on success / pass, 1 on a mathematical failure (a refused
// verdict, an exhausted search, a failing suite), 2 on input errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ncball/errors.hpp"
#include "ncball/json_io.hpp"
#include "ncball/verify.hpp"

namespace {

using ncball::Error;
using ncball::ErrorCode;
using ncball::jsonio::json;
namespace cball = ncball::cball;
namespace freepoly = ncball::freepoly;
namespace nestrep = ncball::nestrep;
namespace semicrossed = ncball::semicrossed;
namespace dshift = ncball::dshift;
namespace jsonio = ncball::jsonio;

struct Options {
  std::uint64_t seed = 0;
  bool json_only = false;
  std::optional<double> tol;
  int max_tries = 1000;
};

struct InputBundle {
  json document;      // merged inputs for the digest
  std::vector<json> files;
};

class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw InputError("invalid JSON in " + path + ": " + e.what());
  }
}

InputBundle load_inputs(const std::vector<std::string>& paths) {
  InputBundle bundle;
  bundle.document = json::array();
  for (const auto& p : paths) {
    bundle.files.push_back(load_file(p));
    bundle.document.push_back(bundle.files.back());
  }
  return bundle;
}

json base_report(const std::string& command, const InputBundle& inputs,
                 const Options& opts, bool seeded) {
  json report{{"command", command},
              {"input_digest", jsonio::digest(inputs.document.dump())}};
  if (seeded) report["seed"] = opts.seed;
  if (opts.tol) report["tol_override"] = *opts.tol;
  return report;
}

int emit(const json& report, const Options& opts, int exit_code,
         const std::string& prose) {
  std::cout << report.dump(2) << std::endl;
  if (!opts.json_only && !prose.empty()) std::cerr << prose << std::endl;
  return exit_code;
}

int run_command(const std::string& name, const Options& opts,
                const std::vector<std::string>& paths,
                const std::function<int(const InputBundle&, json&)>& body) {
  InputBundle inputs;
  try {
    inputs = load_inputs(paths);
  } catch (const InputError& e) {
    std::cout << json{{"command", name}, {"error", e.what()}}.dump(2) << std::endl;
    return 2;
  }
  json report = base_report(name, inputs, opts, true);
  try {
    return body(inputs, report);
  } catch (const Error& e) {
    report["error"] = e.what();
    report["error_code"] = ncball::to_string(e.code());
    const int code = e.code() == ErrorCode::SchemaViolation ? 2 : 1;
    return emit(report, opts, code, std::string("error: ") + e.what());
  }
}

// Decoding happens in a distinguished phase so malformed inputs exit 2 even
// when the violated invariant is semantic (a non-unitary matrix, a center on
// the sphere) rather than structural.
template <typename Fn>
auto decode_phase(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaViolation) throw;
    throw Error(ErrorCode::SchemaViolation, e.what());
  }
}

double tolerance(const Options& opts, double fallback) {
  return opts.tol ? *opts.tol : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale computations for ball automorphisms and their semicrossed products"};
  app.require_subcommand(1);

  Options opts;
  app.add_option("--seed", opts.seed, "seed for randomized operations");
  app.add_flag("--json", opts.json_only, "suppress prose on stderr");
  double tol_value = 0.0;
  auto* tol_opt = app.add_option("--tol", tol_value, "override the default decision tolerance");
  app.add_option("--max-tries", opts.max_tries, "cap for randomized searches");

  std::vector<std::string> files;

  // ---- aut ----
  auto* aut = app.add_subcommand("aut", "ball automorphisms");
  aut->require_subcommand(1);
  std::string type_hint;
  int random_n = 2;

  auto* aut_show = aut->add_subcommand("show", "validate and describe an automorphism");
  aut_show->add_option("input", files, "automorphism JSON")->required();
  auto* aut_compose = aut->add_subcommand("compose", "compose two automorphisms");
  aut_compose->add_option("input", files, "two automorphism JSON files")->required()->expected(2);
  auto* aut_inverse = aut->add_subcommand("inverse", "invert an automorphism");
  aut_inverse->add_option("input", files, "automorphism JSON")->required();
  auto* aut_fix = aut->add_subcommand("fix", "fixed point census");
  aut_fix->add_option("input", files, "automorphism JSON")->required();
  auto* aut_classify = aut->add_subcommand("classify", "type tag");
  aut_classify->add_option("input", files, "automorphism JSON")->required();
  auto* aut_conjugate = aut->add_subcommand("conjugate", "decide conjugacy");
  aut_conjugate->add_option("input", files, "two automorphism JSON files")->required()->expected(2);
  auto* aut_random = aut->add_subcommand("random", "seeded random automorphism");
  aut_random->add_option("--n", random_n, "ball dimension")->required();
  aut_random->add_option("--type", type_hint, "identity|elliptic|parabolic|hyperbolic");

  // ---- rep ----
  auto* rep = app.add_subcommand("rep", "nest representations");
  rep->require_subcommand(1);
  auto* rep_rho = rep->add_subcommand("rho", "build rho_{Z,w} from {points, word, delta}");
  rep_rho->add_option("input", files, "representation JSON")->required();
  auto* rep_corner = rep->add_subcommand("corner", "corner entry of a word: {rep, word}");
  rep_corner->add_option("input", files, "input JSON")->required();
  auto* rep_surjective = rep->add_subcommand("surjective", "generated algebra dimension");
  rep_surjective->add_option("input", files, "representation JSON")->required();
  auto* rep_separate = rep->add_subcommand("separate", "separation witness: {poly, points?, eps?}");
  rep_separate->add_option("input", files, "input JSON")->required();

  // ---- sc ----
  auto* sc = app.add_subcommand("sc", "semicrossed product layer");
  sc->require_subcommand(1);
  auto* sc_census = sc->add_subcommand("census", "maximal analytic sets");
  sc_census->add_option("input", files, "automorphism JSON")->required();
  auto* sc_srep = sc->add_subcommand("srep", "2x2 s-representation: {phi, z, b, c}");
  sc_srep->add_option("input", files, "input JSON")->required();
  auto* sc_zero_u = sc->add_subcommand("zero-u-cert", "zero-U certificate: {phi, points}");
  sc_zero_u->add_option("input", files, "input JSON")->required();
  auto* sc_ideal = sc->add_subcommand("ideal", "ideal membership probe: {element, points?, eps?}");
  sc_ideal->add_option("input", files, "input JSON")->required();
  auto* sc_decide = sc->add_subcommand("decide", "isomorphism decision");
  sc_decide->add_option("input", files, "two automorphism JSON files")->required()->expected(2);
  auto* sc_orbit = sc->add_subcommand("orbit", "orbit representation: {phi, z, blocks}");
  sc_orbit->add_option("input", files, "input JSON")->required();

  // ---- ds ----
  auto* ds = app.add_subcommand("ds", "d-shift mirror");
  ds->require_subcommand(1);
  auto* ds_eval = ds->add_subcommand("eval", "2x2 calculus: {poly, pair}");
  ds_eval->add_option("input", files, "input JSON")->required();
  int sym_d = 2, sym_n = 2;
  auto* ds_symfock = ds->add_subcommand("symfock", "truncated d-shift tuple");
  ds_symfock->add_option("--d", sym_d, "variables")->required();
  ds_symfock->add_option("--N", sym_n, "truncation order")->required();
  auto* ds_decide = ds->add_subcommand("decide", "isomorphism decision for the d-shift");
  ds_decide->add_option("input", files, "two automorphism JSON files")->required()->expected(2);

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "seeded verification suites");
  std::string suite = "all";
  verify_cmd->add_option("--suite", suite, "suite name or 'all'");

  // global flags are declared on the root; let them match from any leaf
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* node) {
    node->fallthrough(true);
    for (auto* sub : node->get_subcommands([](const CLI::App*) { return true; }))
      enable_fallthrough(sub);
  };
  enable_fallthrough(&app);

  CLI11_PARSE(app, argc, argv);
  if (tol_opt->count() > 0) opts.tol = tol_value;

  // ---------------- aut ----------------
  if (aut_show->parsed()) {
    return run_command("aut show", opts, files, [&](const InputBundle& in, json& report) {
      const auto phi = decode_phase([&] { return jsonio::decode_automorphism(in.files[0], ""); });
      report["result"] =
          json{{"automorphism", jsonio::encode(phi)},
               {"type", cball::to_string(cball::classify(phi))},
               {"unitary_defect", ncball::unitary_defect(phi.unitary_part())},
               {"center_norm", phi.center().norm()}};
      return emit(report, opts, 0, "valid automorphism");
    });
  }
  if (aut_compose->parsed()) {
    return run_command("aut compose", opts, files, [&](const InputBundle& in, json& report) {
      const auto phi = decode_phase([&] { return jsonio::decode_automorphism(in.files[0], ""); });
      const auto psi = decode_phase([&] { return jsonio::decode_automorphism(in.files[1], ""); });
      report["result"] = jsonio::encode(cball::compose(phi, psi));
      return emit(report, opts, 0, "composed");
    });
  }
  if (aut_inverse->parsed()) {
    return run_command("aut inverse", opts, files, [&](const InputBundle& in, json& report) {
      const auto phi = decode_phase([&] { return jsonio::decode_automorphism(in.files[0], ""); });
      report["result"] = jsonio::encode(cball::inverse(phi));
      return emit(report, opts, 0, "inverted");
    });
  }
  if (aut_fix->parsed()) {
    return run_command("aut fix", opts, files, [&](const InputBundle& in, json& report) {
      const auto phi = decode_phase([&] { return jsonio::decode_automorphism(in.files[0], ""); });
      const auto fp = cball::fixed_points(phi);
      report["tolerances"] = json{{"fixed_point_residual", 1e-9}};
      report["result"] = jsonio::encode(fp);
      return emit(report, opts, 0, std::string("type: ") + cball::to_string(fp.type));
    });
  }
  if (aut_classify->parsed()) {
    return run_command("aut classify", opts, files, [&](const InputBundle& in, json& report) {
      const auto phi = decode_phase([&] { return jsonio::decode_automorphism(in.files[0], ""); });
      const auto type = cball::classify(phi);
      report["result"] = json{{"type", cball::to_string(type)}};
      return emit(report, opts, 0, cball::to_string(type));
    });
  }
  if (aut_conjugate->parsed()) {
    return run_command("aut conjugate", opts, files, [&](const InputBundle& in, json& report) {
      const auto phi1 = decode_phase([&] { return jsonio::decode_automorphism(in.files[0], ""); });
      const auto phi2 = decode_phase([&] { return jsonio::decode_automorphism(in.files[1], ""); });
      const auto verdict = cball::are_conjugate(phi1, phi2);
      report["tolerances"] = json{{"certificate_residual", tolerance(opts, 1e-8)},
                                  {"eigenvalue_match", 1e-8}};
      report["result"] = jsonio::encode(verdict);
      const bool ok = verdict.verdict == cball::ConjugacyOutcome::Conjugate;
      report["pass"] = ok;
      return emit(report, opts, ok ? 0 : 1, cball::to_string(verdict.verdict));
    });
  }
  if (aut_random->parsed()) {
    return run_command("aut random", opts, files, [&](const InputBundle&, json& report) {
      std::optional<cball::AutomorphismType> hint;
      if (!type_hint.empty()) {
        if (type_hint == "identity") hint = cball::AutomorphismType::Identity;
        else if (type_hint == "elliptic") hint = cball::AutomorphismType::Elliptic;
        else if (type_hint == "parabolic") hint = cball::AutomorphismType::Parabolic;
        else if (type_hint == "hyperbolic") hint = cball::AutomorphismType::Hyperbolic;
        else throw Error(ErrorCode::SchemaViolation, "unknown type hint: " + type_hint);
      }
      const auto phi = cball::random_automorphism(opts.seed, random_n, hint);
      report["result"] = jsonio::encode(phi);
      return emit(report, opts, 0, "generated");
    });
  }

  // ---------------- rep ----------------
  if (rep_rho->parsed()) {
    return run_command("rep rho", opts, files, [&](const InputBundle& in, json& report) {
      const auto r = decode_phase([&] { return jsonio::decode_rep(in.files[0], ""); });
      report["result"] = jsonio::encode(r);
      report["result"]["row_norm"] = freepoly::row_norm(r.tuple());
      return emit(report, opts, 0, "built");
    });
  }
  if (rep_corner->parsed()) {
    return run_command("rep corner", opts, files, [&](const InputBundle& in, json& report) {
      const auto r = decode_phase(
          [&] { return jsonio::decode_rep(jsonio::expect_field(in.files[0], "rep", ""), "/rep"); });
      const auto v = decode_phase(
          [&] { return jsonio::decode_word(jsonio::expect_field(in.files[0], "word", ""), "/word"); });
      report["result"] = json{{"word", jsonio::encode(v)},
                              {"value", jsonio::encode(nestrep::corner_entry(r, v))}};
      return emit(report, opts, 0, "corner entry computed");
    });
  }
  if (rep_surjective->parsed()) {
    return run_command("rep surjective", opts, files, [&](const InputBundle& in, json& report) {
      const auto r = decode_phase([&] { return jsonio::decode_rep(in.files[0], ""); });
      const auto s = nestrep::check_surjective(r);
      report["result"] = json{{"surjective", s.surjective}, {"dimension", s.dimension}};
      report["pass"] = s.surjective;
      return emit(report, opts, 0, s.surjective ? "surjective" : "not surjective");
    });
  }
  if (rep_separate->parsed()) {
    return run_command("rep separate", opts, files, [&](const InputBundle& in, json& report) {
      const auto& doc = in.files[0];
      const auto poly = decode_phase(
          [&] { return jsonio::decode_free_poly(jsonio::expect_field(doc, "poly", ""), "/poly"); });
      std::vector<cball::BallPoint> base;
      if (doc.contains("points"))
        for (std::size_t i = 0; i < doc["points"].size(); ++i)
          base.push_back(decode_phase([&] {
            return jsonio::decode_point(doc["points"][i], "/points/" + std::to_string(i));
          }));
      const double eps = doc.contains("eps") ? doc["eps"].get<double>() : 1e-2;
      report["tolerances"] = json{{"eps", eps}, {"min_witness", tolerance(opts, 1e-12)}};
      const auto witness = nestrep::separate(poly, nestrep::PointSequence(base), eps,
                                             opts.seed, opts.max_tries);
      report["result"] = jsonio::encode(witness);
      return emit(report, opts, 0, "witness found");
    });
  }

  // ---------------- sc ----------------
  if (sc_census->parsed()) {
    return run_command("sc census", opts, files, [&](const InputBundle& in, json& report) {
      const auto phi = decode_phase([&] { return jsonio::decode_automorphism(in.files[0], ""); });
      const auto r = semicrossed::census(phi);
      report["result"] = jsonio::encode(r);
      report["result"]["identity_recognized"] = semicrossed::recognize_identity(r);
      return emit(report, opts, 0, "census computed");
    });
  }
  if (sc_srep->parsed()) {
    return run_command("sc srep", opts, files, [&](const InputBundle& in, json& report) {
      const auto& doc = in.files[0];
      const auto phi = decode_phase(
          [&] { return jsonio::decode_automorphism(jsonio::expect_field(doc, "phi", ""), "/phi"); });
      const auto z = decode_phase(
          [&] { return jsonio::decode_point(jsonio::expect_field(doc, "z", ""), "/z"); });
      const auto b = decode_phase(
          [&] { return jsonio::decode_cvec(jsonio::expect_field(doc, "b", ""), "/b"); });
      const auto c = decode_phase(
          [&] { return jsonio::decode_complex(jsonio::expect_field(doc, "c", ""), "/c"); });
      const auto pair = semicrossed::build_srep(phi, z, b, c);
      const double residual = semicrossed::check_covariance_2x2(pair, phi);
      report["result"] = jsonio::encode(pair);
      report["result"]["covariance_residual"] = residual;
      report["result"]["degenerate"] = std::abs(pair.k_image(0, 1)) == 0.0;
      return emit(report, opts, 0, "s-representation built");
    });
  }
  if (sc_zero_u->parsed()) {
    return run_command("sc zero-u-cert", opts, files, [&](const InputBundle& in, json& report) {
      const auto& doc = in.files[0];
      const auto phi = decode_phase(
          [&] { return jsonio::decode_automorphism(jsonio::expect_field(doc, "phi", ""), "/phi"); });
      std::vector<cball::BallPoint> points;
      const auto& pts = jsonio::expect_field(doc, "points", "");
      for (std::size_t i = 0; i < pts.size(); ++i)
        points.push_back(decode_phase(
            [&] { return jsonio::decode_point(pts[i], "/points/" + std::to_string(i)); }));
      const auto cert = semicrossed::zero_u_certificate(points, phi);
      report["tolerances"] = json{{"interpolation", 1e-12}, {"disjointness", 1e-8}};
      report["result"] = jsonio::encode(cert);
      return emit(report, opts, 0, "certificate produced");
    });
  }
  if (sc_ideal->parsed()) {
    return run_command("sc ideal", opts, files, [&](const InputBundle& in, json& report) {
      const auto& doc = in.files[0];
      const auto x = decode_phase(
          [&] { return jsonio::decode_element(jsonio::expect_field(doc, "element", ""), "/element"); });
      const bool member = semicrossed::in_ideal(x);
      report["result"] = json{{"in_ideal", member}};
      if (!member) {
        std::vector<cball::BallPoint> base;
        if (doc.contains("points"))
          for (std::size_t i = 0; i < doc["points"].size(); ++i)
            base.push_back(decode_phase([&] {
              return jsonio::decode_point(doc["points"][i], "/points/" + std::to_string(i));
            }));
        const double eps = doc.contains("eps") ? doc["eps"].get<double>() : 1e-2;
        const auto witness = semicrossed::certify_not_in_ideal(
            x, nestrep::PointSequence(base), eps, opts.seed, opts.max_tries);
        report["result"]["witness"] = jsonio::encode(witness);
      }
      return emit(report, opts, 0, member ? "in the ideal" : "not in the ideal; witness attached");
    });
  }
  if (sc_decide->parsed()) {
    return run_command("sc decide", opts, files, [&](const InputBundle& in, json& report) {
      const auto phi1 = decode_phase([&] { return jsonio::decode_automorphism(in.files[0], ""); });
      const auto phi2 = decode_phase([&] { return jsonio::decode_automorphism(in.files[1], ""); });
      const auto r = semicrossed::decide_isomorphism(phi1, phi2);
      report["tolerances"] = json{{"certificate_residual", tolerance(opts, 1e-8)}};
      report["result"] = jsonio::encode(r);
      const bool ok = r.verdict == semicrossed::IsoVerdict::Isomorphic;
      report["pass"] = ok;
      return emit(report, opts, ok ? 0 : 1, semicrossed::to_string(r.verdict));
    });
  }
  if (sc_orbit->parsed()) {
    return run_command("sc orbit", opts, files, [&](const InputBundle& in, json& report) {
      const auto& doc = in.files[0];
      const auto phi = decode_phase(
          [&] { return jsonio::decode_automorphism(jsonio::expect_field(doc, "phi", ""), "/phi"); });
      const auto z = decode_phase(
          [&] { return jsonio::decode_point(jsonio::expect_field(doc, "z", ""), "/z"); });
      const int blocks =
          jsonio::expect_int(jsonio::expect_field(doc, "blocks", ""), "/blocks");
      const auto pair = semicrossed::orbit_representation(phi, z, blocks);
      report["result"] = jsonio::encode(pair);
      report["result"]["covariance_residual"] =
          semicrossed::orbit_covariance_residual(pair, phi);
      report["result"]["shift_direction"] = "subdiagonal";  // entries at (m+1, m)
      return emit(report, opts, 0, "orbit representation built");
    });
  }

  // ---------------- ds ----------------
  if (ds_eval->parsed()) {
    return run_command("ds eval", opts, files, [&](const InputBundle& in, json& report) {
      const auto& doc = in.files[0];
      const auto f = decode_phase(
          [&] { return jsonio::decode_cpoly(jsonio::expect_field(doc, "poly", ""), "/poly"); });
      const auto pair = decode_phase([&] {
        return jsonio::decode_commuting_pair(jsonio::expect_field(doc, "pair", ""), "/pair");
      });
      report["result"] = json{{"matrix", jsonio::encode(dshift::ceval_2x2(f, pair))},
                              {"row_norm", pair.row_norm()}};
      return emit(report, opts, 0, "evaluated");
    });
  }
  if (ds_symfock->parsed()) {
    return run_command("ds symfock", opts, files, [&](const InputBundle&, json& report) {
      const auto t = dshift::symfock_truncation(sym_d, sym_n);
      report["result"] = json{{"d", sym_d},
                              {"N", sym_n},
                              {"dimension", t.size()},
                              {"row_norm", freepoly::row_norm(t)},
                              {"matrices", jsonio::encode(t)}};
      return emit(report, opts, 0, "truncation built");
    });
  }
  if (ds_decide->parsed()) {
    return run_command("ds decide", opts, files, [&](const InputBundle& in, json& report) {
      const auto phi1 = decode_phase([&] { return jsonio::decode_automorphism(in.files[0], ""); });
      const auto phi2 = decode_phase([&] { return jsonio::decode_automorphism(in.files[1], ""); });
      const auto r = dshift::decide_isomorphism_d(phi1, phi2);
      report["result"] = jsonio::encode(r);
      const bool ok = r.verdict == semicrossed::IsoVerdict::Isomorphic;
      report["pass"] = ok;
      return emit(report, opts, ok ? 0 : 1, semicrossed::to_string(r.verdict));
    });
  }

  // ---------------- verify ----------------
  if (verify_cmd->parsed()) {
    return run_command("verify", opts, files, [&](const InputBundle&, json& report) {
      json results = json::array();
      bool all_pass = true;
      for (const auto& s : ncball::verify::all_suites()) {
        if (suite != "all" && suite != s.name) continue;
        const auto r = s.run(opts.seed);
        all_pass = all_pass && r.pass;
        results.push_back(json{{"name", r.name},
                               {"pass", r.pass},
                               {"cases", r.cases},
                               {"failures", r.failures},
                               {"worst", r.worst},
                               {"details", r.details}});
        if (!opts.json_only)
          std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.cases
                    << " checks)" << std::endl;
      }
      if (results.empty())
        throw Error(ErrorCode::SchemaViolation, "unknown suite: " + suite);
      report["result"] = json{{"suites", results}};
      report["pass"] = all_pass;
      return emit(report, opts, all_pass ? 0 : 1,
                  all_pass ? "all suites passed" : "suite failures");
    });
  }

  return 2;
}
