#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "sscurve/builder.hpp"
#include "sscurve/classify.hpp"
#include "sscurve/decomp.hpp"
#include "sscurve/quotient.hpp"
#include "sscurve/zeta.hpp"

namespace sscurve {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "sscurve 0.1.0";

// Schema violations are reported as InvalidInput.
Json to_json(const Field& f);
Field field_from_json(const Json& j);

Json to_json(const LinPoly& r);  // {"coeffs": [...]}
LinPoly linpoly_from_json(const Json& j, const Field& f);
Json to_json(const SparsePoly& p);  // {"terms": [{"exp", "coeff"}]}
SparsePoly sparse_from_json(const Json& j, const Field& f);

// Curve document: the curve itself plus free-form metadata kept verbatim.
struct CurveFile {
  std::variant<CurveSpec, FibreProductSpec> curve;
  Json meta = Json::object();
};

Json to_json(const CurveFile& file);
CurveFile curve_file_from_json(const Json& j);

// Canonical text: two-space indentation and a trailing newline.
std::string dump(const Json& j);
Json parse_json(const std::string& text);

CurveFile read_curve_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json certificate_json(const GenusCertificate& cert);
Json decomposition_json(const GenusDecomposition& d);
Json quotients_json(const std::vector<QuotientCurve>& qs);
Json lpoly_json(const LPoly& l);
Json slopes_json(const std::vector<Slope>& slopes);
Json verify_json(const VerifyReport& rep);
Json iso_json(const std::optional<IsoWitness>& w, const std::string& mode);
Json radical_json(const RadicalBasis& r);

}  // namespace sscurve
