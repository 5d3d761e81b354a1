// sscurve: construct and check supersingular curves in characteristic 2.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or schema error,
// 3 budget or capacity exceeded.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "sscurve/builder.hpp"
#include "sscurve/classify.hpp"
#include "sscurve/decomp.hpp"
#include "sscurve/errors.hpp"
#include "sscurve/io.hpp"
#include "sscurve/quotient.hpp"
#include "sscurve/zeta.hpp"

using namespace sscurve;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kCapacity = 3 };

struct Options {
  bool json = false;
  std::optional<unsigned> budget_log2;
  std::optional<unsigned> max_degree;

  Budget budget() const {
    Budget b = Budget::from_env();
    if (budget_log2) b.log2_points = *budget_log2;
    if (max_degree) b.max_field_degree = *max_degree;
    return b;
  }
};

void emit(const Json& j) { std::cout << dump(j); }

std::string join_blocks(const GenusDecomposition& d) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    if (i) out << ",";
    out << "[" << d.blocks[i].s << "," << d.blocks[i].r << "]";
  }
  out << "]";
  return out.str();
}

std::string join(const std::vector<unsigned>& v) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << "]";
  return out.str();
}

std::string equation_text(const CurveFile& file) {
  if (const auto* c = std::get_if<CurveSpec>(&file.curve)) return format_equation(*c);
  const auto& fp = std::get<FibreProductSpec>(file.curve);
  std::string out;
  for (std::size_t j = 0; j < fp.components.size(); ++j) {
    const std::string y = "y" + std::to_string(j);
    out += y + "^2+" + y + " = " + format_sparse(fp.components[j], 'x') + "\n";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

GenusCertificate curve_certificate(const CurveFile& file, const Budget& budget) {
  if (const auto* c = std::get_if<CurveSpec>(&file.curve)) return quotient_certificate(*c, budget.max_field_degree);
  return certificate(std::get<FibreProductSpec>(file.curve));
}

std::uint64_t curve_genus(const CurveFile& file, const Budget& budget) {
  return curve_certificate(file, budget).total;
}

std::uint64_t count_file(const CurveFile& file, unsigned k, const Budget& budget) {
  if (const auto* c = std::get_if<CurveSpec>(&file.curve)) return count_points(*c, k, budget);
  return count_points(std::get<FibreProductSpec>(file.curve), k, budget);
}

Json file_with_field_poly(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

// {"field": {...}, "coeffs": [...]}
LinPoly read_linpoly(const std::string& path) {
  const Json j = file_with_field_poly(path);
  if (!j.is_object() || !j.contains("field")) throw InvalidInput(path + ": missing \"field\"");
  return linpoly_from_json(j, field_from_json(j.at("field")));
}

// {"field": {...}, "basis": [[...], ...]}
std::vector<LinPoly> read_basis(const std::string& path) {
  const Json j = file_with_field_poly(path);
  if (!j.is_object() || !j.contains("field") || !j.contains("basis") || !j.at("basis").is_array()) {
    throw InvalidInput(path + ": expected \"field\" and \"basis\"");
  }
  const Field f = field_from_json(j.at("field"));
  std::vector<LinPoly> out;
  for (const Json& r : j.at("basis")) out.push_back(linpoly_from_json(Json{{"coeffs", r}}, f));
  return out;
}

int cmd_decompose(const Options& opt, std::uint64_t g) {
  const GenusDecomposition d = decompose(g);
  if (opt.json) {
    emit(decomposition_json(d));
    return kOk;
  }
  std::cout << "g = " << d.g << "\n"
            << "blocks (s,r) = " << join_blocks(d) << "\n"
            << "w = " << d.w << ", m = " << d.m << "\n"
            << "u = " << join(d.u) << "\n"
            << "moduli bound = " << (d.moduli_bound ? std::to_string(*d.moduli_bound) : std::string("n/a")) << "\n";
  return kOk;
}

CurveFile construct(std::uint64_t g, const std::string& mode, bool glue) {
  const GenusDecomposition d = decompose(g);
  Json construction;
  construction["g"] = g;
  construction["mode"] = mode;
  construction["glue"] = glue;
  Json meta;
  std::optional<CurveFile> file;
  if (mode == "f2") {
    if (glue) throw InvalidInput("--glue applies to --mode f2m only");
    CurveSpec c = build_prime_field(d);
    meta["certificate"] = certificate_json(quotient_certificate(c));
    file = CurveFile{std::move(c)};
  } else if (mode == "f2m") {
    FibreProductSpec fp = build_components(d);
    meta["certificate"] = certificate_json(certificate(fp));
    if (glue) {
      file = CurveFile{glue_single_block(fp)};
    } else {
      file = CurveFile{std::move(fp)};
    }
  } else {
    throw InvalidInput("unknown mode " + mode);
  }
  meta["construction"] = construction;
  meta["tool_version"] = kToolVersion;
  file->meta = std::move(meta);
  return std::move(*file);
}

int cmd_construct(const Options& opt, std::uint64_t g, const std::string& mode, bool glue, const std::string& out) {
  const CurveFile file = construct(g, mode, glue);
  const std::string text = dump(to_json(file));
  if (!out.empty()) write_text_file(out, text);
  if (opt.json) {
    if (out.empty()) std::cout << text;
  } else {
    std::cout << equation_text(file) << "\n";
  }
  return kOk;
}

// Largest k <= 2 for which the curve and all its quotients over F_{2^{M k}}
// together stay within the enumeration budget.
unsigned additivity_kmax(const CurveSpec& c, const Budget& budget) {
  const AlphaSpace a = solve_alpha_space(c, budget.max_field_degree);
  const unsigned pieces_log2 = static_cast<unsigned>(a.dim());  // 2^n - 1 quotients plus the curve
  unsigned kmax = 0;
  for (unsigned k = 1; k <= 2; ++k) {
    const unsigned deg = a.ambient.degree() * k;
    if (deg + pieces_log2 <= budget.log2_points && deg <= budget.max_field_degree) kmax = k;
  }
  return kmax;
}

int cmd_verify(const Options& opt, const std::string& path) {
  const Budget budget = opt.budget();
  const CurveFile file = read_curve_file(path);
  VerifyReport rep;
  if (const auto* c = std::get_if<CurveSpec>(&file.curve)) {
    rep = verify_supersingular(*c, budget);
    if (rep.checks["irreducible"]) {
      try {
        const unsigned kmax = additivity_kmax(*c, budget);
        if (kmax > 0) rep.checks["additivity"] = powersum_additivity_check(*c, kmax, budget);
      } catch (const CapacityError&) {
        // the explicit alpha space is out of reach; nothing to compare
      }
    }
  } else {
    rep = verify_supersingular(std::get<FibreProductSpec>(file.curve), budget);
  }
  bool ok = rep.verdict != Verdict::kNotSupersingular;
  for (const auto& [name, pass] : rep.checks) ok = ok && pass;

  if (opt.json) {
    emit(verify_json(rep));
  } else {
    const bool reducible = !rep.checks["irreducible"];
    std::cout << "genus " << rep.genus << ", path " << rep.path << "\n";
    if (reducible) std::cout << "reducible\n";
    if (rep.lpoly) std::cout << "L = " << lpoly_json(*rep.lpoly).dump() << "\n";
    std::map<std::string, std::uint64_t> methods;
    for (const auto& p : rep.pieces) methods[p.method] += p.multiplicity;
    for (const auto& [m, n] : methods) std::cout << "  " << n << " quotient(s): " << m << "\n";
    for (const auto& [name, pass] : rep.checks) std::cout << "  check " << name << ": " << (pass ? "ok" : "FAILED") << "\n";
    std::cout << "supersingular: "
              << (rep.verdict == Verdict::kSupersingular ? "yes"
                  : rep.verdict == Verdict::kCertified   ? "certified"
                                                         : "no")
              << "\n";
  }
  return ok ? kOk : kFail;
}

int cmd_quotients(const Options& opt, const std::string& path) {
  const Budget budget = opt.budget();
  const CurveFile file = read_curve_file(path);
  const auto* c = std::get_if<CurveSpec>(&file.curve);
  if (c == nullptr) throw InvalidInput("quotients needs a single-equation curve");
  const auto qs = decomposition(*c, budget.max_field_degree);
  if (opt.json) {
    emit(quotients_json(qs));
  } else {
    for (const auto& q : qs) {
      std::cout << to_hex(q.alpha.bits) << "  genus " << q.genus << "  w^2+w = " << format_sparse(q.rhs) << "\n";
    }
  }
  return kOk;
}

int cmd_count(const Options& opt, const std::string& path, unsigned k) {
  const CurveFile file = read_curve_file(path);
  const std::uint64_t n = count_file(file, k, opt.budget());
  if (opt.json) {
    emit(Json{{"ext", k}, {"count", n}});
  } else {
    std::cout << n << "\n";
  }
  return kOk;
}

int cmd_lpoly(const Options& opt, const std::string& path) {
  const Budget budget = opt.budget();
  const CurveFile file = read_curve_file(path);
  const std::uint64_t g = curve_genus(file, budget);
  const unsigned n_deg = std::visit([](const auto& c) { return c.field.degree(); }, file.curve);
  CountSeries series{n_deg, {}, g};
  for (unsigned k = 1; k <= g; ++k) series.counts.push_back(count_file(file, k, budget));
  const LPoly l = lpoly_from_counts(series);
  if (opt.json) {
    emit(lpoly_json(l));
  } else {
    std::cout << "[";
    for (std::size_t i = 0; i < l.coeffs.size(); ++i) std::cout << (i ? "," : "") << l.coeffs[i];
    std::cout << "]\n";
  }
  return kOk;
}

int cmd_iso(const Options& opt, const std::string& mode, const std::string& a, const std::string& b) {
  const Budget budget = opt.budget();
  std::optional<IsoWitness> w;
  if (mode == "curves") {
    w = curves_isomorphic(read_linpoly(a), read_linpoly(b), budget.max_field_degree);
  } else if (mode == "covers") {
    w = covers_isomorphic(read_basis(a), read_basis(b), budget.max_field_degree);
  } else {
    throw InvalidInput("unknown mode " + mode);
  }
  if (opt.json) {
    emit(iso_json(w, mode));
  } else if (w) {
    std::cout << "isomorphic, rho = " << to_hex(w->rho.bits) << " in F_2^" << w->field.degree()
              << (w->mode == "as-covers" ? " (as covers)" : "") << "\n";
  } else {
    std::cout << "not isomorphic\n";
  }
  return kOk;
}

int cmd_radical(const Options& opt, const std::string& path) {
  const RadicalBasis r = radical(read_linpoly(path), opt.budget().max_field_degree);
  if (opt.json) {
    emit(radical_json(r));
  } else {
    std::cout << "dimension " << r.basis.size() << " in F_2^" << r.ambient.degree() << "\n";
    for (FieldElem e : r.basis) std::cout << "  " << to_hex(e.bits) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supersingular curves in characteristic 2"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Machine-readable output only");
  app.add_option("--budget-log2", opt.budget_log2, "log2 of the largest enumerated field")->check(CLI::Range(1, 64));
  app.add_option("--max-degree", opt.max_degree, "Largest ambient field degree")->check(CLI::Range(1, 64));

  std::uint64_t g = 0;
  std::string mode = "f2";
  std::string iso_mode = "curves";
  bool glue = false;
  std::string out;
  std::string file;
  std::string file2;
  unsigned ext = 1;
  int code = kOk;

  auto* decompose_cmd = app.add_subcommand("decompose", "Block decomposition of a genus");
  decompose_cmd->add_option("g", g, "Genus")->required();

  auto* construct_cmd = app.add_subcommand("construct", "Build a curve of the given genus");
  construct_cmd->add_option("g", g, "Genus")->required();
  construct_cmd->add_option("--mode", mode, "f2 (prime field) or f2m (fibre product over F_2^m)")
      ->check(CLI::IsMember({"f2", "f2m"}));
  construct_cmd->add_flag("--glue", glue, "Glue a single-block fibre product into one equation");
  construct_cmd->add_option("-o,--output", out, "Write the curve file here");

  auto* verify_cmd = app.add_subcommand("verify", "Check irreducibility and supersingularity");
  verify_cmd->add_option("file", file, "Curve file")->required();

  auto* quotients_cmd = app.add_subcommand("quotients", "List the degree-2 quotients");
  quotients_cmd->add_option("file", file, "Curve file")->required();

  auto* count_cmd = app.add_subcommand("count", "Count points over an extension");
  count_cmd->add_option("file", file, "Curve file")->required();
  count_cmd->add_option("--ext", ext, "Extension degree k")->check(CLI::PositiveNumber);

  auto* lpoly_cmd = app.add_subcommand("lpoly", "L-polynomial from point counts");
  lpoly_cmd->add_option("file", file, "Curve file")->required();

  auto* iso_cmd = app.add_subcommand("iso", "Isomorphism test");
  iso_cmd->add_option("--mode", iso_mode, "curves or covers")->check(CLI::IsMember({"curves", "covers"}));
  iso_cmd->add_option("a", file, "First input")->required();
  iso_cmd->add_option("b", file2, "Second input")->required();

  auto* radical_cmd = app.add_subcommand("radical", "Root space of E_{h,R}");
  radical_cmd->add_option("file", file, "Linearized polynomial file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*decompose_cmd) code = cmd_decompose(opt, g);
    if (*construct_cmd) code = cmd_construct(opt, g, mode, glue, out);
    if (*verify_cmd) code = cmd_verify(opt, file);
    if (*quotients_cmd) code = cmd_quotients(opt, file);
    if (*count_cmd) code = cmd_count(opt, file, ext);
    if (*lpoly_cmd) code = cmd_lpoly(opt, file);
    if (*iso_cmd) code = cmd_iso(opt, iso_mode, file, file2);
    if (*radical_cmd) code = cmd_radical(opt, file);
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const ReducibleCover& e) {
    std::cerr << "reducible: " << e.what() << "\n";
    return kFail;
  } catch (const InconsistentCounts& e) {
    std::cerr << "inconsistent counts: " << e.what() << "\n";
    return kFail;
  } catch (const UnsupportedRamification& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kFail;
  } catch (const InternalConsistency& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
