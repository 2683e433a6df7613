#pragma once

// JSON exchange formats. Rationals are strings "p/q"; dimensions, indices and primes are
// integers. Readers throw InvalidInput with a line:column or JSON-pointer anchor.

#include <string>

#include "json.hpp"
#include "sbsplit/surface.hpp"

namespace sbsplit {

using Json = nlohmann::ordered_json;

/// `source` prefixes error messages ("file:line:col: ...").
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);
/// Two-space indentation and a trailing newline.
std::string dump_json(const Json& j);

Json to_json(const Rat& q);
Rat rat_from_json(const Json& j, const std::string& where);
Json to_json(const QMatrix& m);
QMatrix matrix_from_json(const Json& j, const std::string& where);

/// {"n": 10, "quadrics": [27 matrices]}
Json surface_to_json(const SurfaceQuadrics& s);
SurfaceQuadrics surface_from_json(const Json& j);

/// {"matrix": [[...]], "status": "split"}
Json map_to_json(const QMatrix& m);
QMatrix map_from_json(const Json& j);

/// {"dim": n, "sc": [{"i", "j", "k", "c"}]} with i < j listed; [b_j, b_i] follows.
Json lie_to_json(const LieAlgebra& g);
LieAlgebra lie_from_json(const Json& j);

/// {"dim": n, "mt": [{"i", "j", "k", "c"}], "unit": [...]}
Json algebra_to_json(const AssocAlg& a);
AssocAlg algebra_from_json(const Json& j);

/// {"tower": [[coefficient strings, lowest degree first]]}; one absolute step.
Json field_to_json(const FieldPtr& f);
FieldPtr field_from_json(const Json& j);
/// {"coords": [...]} on the power basis.
Json elem_to_json(const NfElem& e);
NfElem elem_from_json(const Json& j, const FieldPtr& f);

Json certificate_to_json(const NormCertificate& c);
NormCertificate certificate_from_json(const Json& j);

Json verdict_to_json(const PipelineVerdict& v);
Json sl3_decision_to_json(const Sl3Decision& d);
Json csa_result_to_json(const CsaResult& r);
Json norm_result_to_json(const NormResult& r);

}  // namespace sbsplit
