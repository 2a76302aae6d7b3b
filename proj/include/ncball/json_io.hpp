#pragma once

#include <json.hpp>
#include <string>

#include "ncball/cball.hpp"
#include "ncball/dshift.hpp"
#include "ncball/freepoly.hpp"
#include "ncball/nestrep.hpp"
#include "ncball/semicrossed.hpp"

namespace ncball::jsonio {

using json = nlohmann::json;

// Complex scalars travel as [re, im]; vectors and matrices as nested arrays
// of those pairs.  Decoders thread a JSON-pointer-style path so schema
// violations name the offending location.

json encode(Complex z);
json encode(const CVec& v);
json encode(const CMat& m);
json encode(const cball::BallPoint& p);
json encode(const cball::MobiusAutomorphism& phi);
json encode(const cball::AffineSet& set);
json encode(const cball::FixedPointData& data);
json encode(const cball::ConjugacyVerdict& verdict);
json encode(const freepoly::Word& w);
json encode(const freepoly::FreePolynomial& p);
json encode(const freepoly::MatrixTuple& t);
json encode(const dshift::CPoly& f);
json encode(const dshift::CommutingPair2x2& pair);
json encode(const semicrossed::SemicrossedElement& x);
json encode(const semicrossed::CensusReport& report);
json encode(const semicrossed::CovariantPair& pair);
json encode(const semicrossed::ZeroUCertificate& cert);
json encode(const semicrossed::IsomorphismReport& report);
json encode(const nestrep::NestRepresentation& rep);
json encode(const nestrep::SeparationWitness& witness);

Complex decode_complex(const json& j, const std::string& path);
CVec decode_cvec(const json& j, const std::string& path);
CMat decode_cmat(const json& j, const std::string& path);
cball::BallPoint decode_point(const json& j, const std::string& path);
cball::MobiusAutomorphism decode_automorphism(const json& j, const std::string& path);
freepoly::Word decode_word(const json& j, const std::string& path);
freepoly::FreePolynomial decode_free_poly(const json& j, const std::string& path);
dshift::CPoly decode_cpoly(const json& j, const std::string& path);
dshift::CommutingPair2x2 decode_commuting_pair(const json& j, const std::string& path);
semicrossed::SemicrossedElement decode_element(const json& j, const std::string& path);

/// Rebuilds the representation from {points, word, delta}; matrices in the
/// input, if any, are ignored (they are derived data).
nestrep::NestRepresentation decode_rep(const json& j, const std::string& path);

// field access with path-carrying errors
const json& expect_field(const json& j, const std::string& key, const std::string& path);
int expect_int(const json& j, const std::string& path);
double expect_double(const json& j, const std::string& path);

/// FNV-1a hash of raw bytes, rendered as fixed-width hex; used to stamp
/// reports with a digest of their input.
std::string digest(const std::string& bytes);

}  // namespace ncball::jsonio
