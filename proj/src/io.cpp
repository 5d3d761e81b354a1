#include "sscurve/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "sscurve/errors.hpp"

namespace sscurve {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

const Json& array_member(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_array()) throw InvalidInput(std::string("\"") + key + "\" must be an array");
  return v;
}

FieldElem elem_from_json(const Json& j, const Field& f) {
  if (!j.is_string()) throw InvalidInput("field elements are hex strings");
  const FieldElem e{parse_hex(j.get<std::string>())};
  if (!f.contains(e)) throw InvalidInput("element " + j.get<std::string>() + " outside the field");
  return e;
}

Json hex_list(const std::vector<FieldElem>& v) {
  Json out = Json::array();
  for (FieldElem e : v) out.push_back(to_hex(e.bits));
  return out;
}

LinPoly linpoly_from_list(const Json& j, const Field& f) {
  if (!j.is_array()) throw InvalidInput("linearized polynomial must be an array of hex strings");
  std::vector<FieldElem> coeffs;
  for (const Json& c : j) coeffs.push_back(elem_from_json(c, f));
  return LinPoly(f, std::move(coeffs));
}

std::string slope_text(const Slope& s) {
  if (s.denominator() == 1) return std::to_string(s.numerator());
  return std::to_string(s.numerator()) + "/" + std::to_string(s.denominator());
}

}  // namespace

Json to_json(const Field& f) {
  Json j;
  j["degree"] = f.degree();
  j["modulus"] = to_hex128(f.modulus());
  return j;
}

Field field_from_json(const Json& j) {
  const Json& deg = member(j, "degree");
  const Json& mod = member(j, "modulus");
  if (!deg.is_number_unsigned() || !mod.is_string()) throw InvalidInput("malformed field description");
  return Field::from_modulus(deg.get<unsigned>(), parse_hex128(mod.get<std::string>()));
}

Json to_json(const LinPoly& r) {
  Json j;
  j["coeffs"] = hex_list(r.coeffs());
  return j;
}

LinPoly linpoly_from_json(const Json& j, const Field& f) { return linpoly_from_list(member(j, "coeffs"), f); }

Json to_json(const SparsePoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["exp"] = e;
    t["coeff"] = to_hex(c.bits);
    terms.push_back(std::move(t));
  }
  Json j;
  j["terms"] = std::move(terms);
  return j;
}

SparsePoly sparse_from_json(const Json& j, const Field& f) {
  SparsePoly p(f);
  std::optional<std::uint64_t> last;
  for (const Json& t : array_member(j, "terms")) {
    const Json& e = member(t, "exp");
    if (!e.is_number_unsigned()) throw InvalidInput("exponents must be nonnegative integers");
    const auto exp = e.get<std::uint64_t>();
    if (last && exp <= *last) throw InvalidInput("terms must have strictly increasing exponents");
    last = exp;
    const FieldElem c = elem_from_json(member(t, "coeff"), f);
    if (c.is_zero()) throw InvalidInput("terms must have nonzero coefficients");
    p.add_term(exp, c);
  }
  return p;
}

Json to_json(const CurveFile& file) {
  Json j;
  if (const auto* c = std::get_if<CurveSpec>(&file.curve)) {
    j["kind"] = "single";
    j["field"] = to_json(c->field);
    j["S"] = hex_list(c->S.coeffs());
    Json rs = Json::array();
    for (const LinPoly& r : c->R) rs.push_back(hex_list(r.coeffs()));
    j["R"] = std::move(rs);
  } else {
    const auto& fp = std::get<FibreProductSpec>(file.curve);
    j["kind"] = "fibre_product";
    j["field"] = to_json(fp.field);
    Json comps = Json::array();
    for (const SparsePoly& p : fp.components) comps.push_back(to_json(p));
    j["components"] = std::move(comps);
    if (!fp.strata.empty()) {
      Json strata = Json::array();
      for (const auto& s : fp.strata) strata.push_back(Json{{"u", s.u}, {"dim", s.dim}});
      j["strata"] = std::move(strata);
    }
  }
  if (!file.meta.empty()) j["meta"] = file.meta;
  return j;
}

CurveFile curve_file_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("curve file must be a JSON object");
  const Json& kind = member(j, "kind");
  const Field f = field_from_json(member(j, "field"));
  CurveFile file{FibreProductSpec{f, {}, {}}, Json::object()};
  if (kind == "single") {
    CurveSpec c{f, linpoly_from_list(array_member(j, "S"), f), {}};
    for (const Json& r : array_member(j, "R")) c.R.push_back(linpoly_from_list(r, f));
    validate(c);
    file.curve = std::move(c);
  } else if (kind == "fibre_product") {
    FibreProductSpec fp{f, {}, {}};
    for (const Json& p : array_member(j, "components")) fp.components.push_back(sparse_from_json(p, f));
    if (fp.components.empty()) throw InvalidInput("fibre product needs at least one component");
    if (j.contains("strata")) {
      for (const Json& s : array_member(j, "strata")) {
        const Json& u = member(s, "u");
        const Json& dim = member(s, "dim");
        if (!u.is_number_unsigned() || !dim.is_number_unsigned()) throw InvalidInput("malformed stratum");
        fp.strata.push_back({u.get<unsigned>(), dim.get<unsigned>()});
      }
    }
    file.curve = std::move(fp);
  } else {
    throw InvalidInput("unknown curve kind");
  }
  if (j.contains("meta")) {
    if (!j.at("meta").is_object()) throw InvalidInput("\"meta\" must be an object");
    file.meta = j.at("meta");
  }
  for (const auto& [key, value] : j.items()) {
    static const std::set<std::string> known{"kind", "field", "S", "R", "components", "strata", "meta"};
    if (!known.contains(key)) throw InvalidInput("unknown key \"" + key + "\"");
  }
  return file;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

CurveFile read_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return curve_file_from_json(parse_json(buf.str()));
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

Json certificate_json(const GenusCertificate& cert) {
  Json strata = Json::array();
  for (const auto& e : cert.strata) strata.push_back(Json{{"count", e.count}, {"genus", e.genus}});
  Json j;
  j["strata"] = std::move(strata);
  j["total"] = cert.total;
  return j;
}

Json decomposition_json(const GenusDecomposition& d) {
  Json j;
  j["g"] = d.g;
  Json blocks = Json::array();
  for (const Block& b : d.blocks) blocks.push_back(Json::array({b.s, b.r}));
  j["blocks"] = std::move(blocks);
  j["w"] = d.w;
  j["m"] = d.m;
  j["u"] = d.u;
  j["moduli_bound"] = d.moduli_bound ? Json(*d.moduli_bound) : Json(nullptr);
  return j;
}

Json quotients_json(const std::vector<QuotientCurve>& qs) {
  Json out = Json::array();
  for (const QuotientCurve& q : qs) {
    Json j;
    j["alpha"] = to_hex(q.alpha.bits);
    j["genus"] = q.genus;
    j["rhs"] = to_json(q.rhs);
    out.push_back(std::move(j));
  }
  return out;
}

Json lpoly_json(const LPoly& l) {
  Json out = Json::array();
  for (const BigInt& c : l.coeffs) out.push_back(c.str());
  return out;
}

Json slopes_json(const std::vector<Slope>& slopes) {
  Json out = Json::array();
  for (const Slope& s : slopes) out.push_back(slope_text(s));
  return out;
}

Json verify_json(const VerifyReport& rep) {
  Json j;
  j["genus"] = rep.genus;
  j["path"] = rep.path;
  j["lpoly"] = rep.lpoly ? lpoly_json(*rep.lpoly) : Json(nullptr);
  j["slopes"] = slopes_json(rep.slopes);
  switch (rep.verdict) {
    case Verdict::kSupersingular:
      j["supersingular"] = true;
      break;
    case Verdict::kNotSupersingular:
      j["supersingular"] = false;
      break;
    case Verdict::kCertified:
      j["supersingular"] = "certified";
      break;
  }
  Json pieces = Json::array();
  for (const PieceReport& p : rep.pieces) {
    Json pj;
    if (!p.alpha.empty()) pj["alpha"] = p.alpha;
    if (p.multiplicity != 1) pj["multiplicity"] = p.multiplicity;
    pj["genus"] = p.genus;
    if (p.field_degree != 0) pj["field_degree"] = p.field_degree;
    pj["method"] = p.method;
    pj["supersingular"] = p.supersingular;
    if (p.lpoly) pj["lpoly"] = lpoly_json(*p.lpoly);
    pieces.push_back(std::move(pj));
  }
  j["pieces"] = std::move(pieces);
  Json checks = Json::object();
  for (const auto& [name, ok] : rep.checks) checks[name] = ok;
  j["checks"] = std::move(checks);
  return j;
}

Json iso_json(const std::optional<IsoWitness>& w, const std::string& mode) {
  Json j;
  j["isomorphic"] = w.has_value();
  j["witness"] = w ? Json(to_hex(w->rho.bits)) : Json(nullptr);
  j["witness_field"] = w ? to_json(w->field) : Json(nullptr);
  j["mode"] = mode;
  if (w && w->mode == "as-covers") j["label"] = "as-covers";
  return j;
}

Json radical_json(const RadicalBasis& r) {
  Json j;
  j["ambient"] = to_json(r.ambient);
  j["basis"] = hex_list(r.basis);
  j["dimension"] = r.basis.size();
  return j;
}

}  // namespace sscurve
