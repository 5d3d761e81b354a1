#include "sscurve/zeta.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <set>

#include "sscurve/errors.hpp"

namespace sscurve {

namespace {

unsigned env_unsigned(const char* name, unsigned fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const unsigned long v = std::strtoul(raw, &end, 10);
  if (*end != '\0' || v == 0 || v > 64) throw InvalidInput(std::string(name) + " must be an integer in 1..64");
  return static_cast<unsigned>(v);
}

void check_budget(unsigned degree, const Budget& budget) {
  if (degree > budget.log2_points) throw CapacityError("enumeration of 2^" + std::to_string(degree) + " points exceeds the budget");
  if (degree > budget.max_field_degree) throw CapacityError("field degree exceeds the budget");
}

bool fits(std::uint64_t degree, const Budget& budget) {
  return degree <= budget.log2_points && degree <= budget.max_field_degree;
}

// Reduced right side with positive odd degree, so that the cover is totally
// ramified over infinity.
SparsePoly require_ramified(const SparsePoly& f) {
  SparsePoly r = as_reduce(f);
  if (r.is_zero()) throw ReducibleCover("right side is in wp(F[x])");
  if (r.degree() % 2 == 0) throw UnsupportedRamification("reduced right side has even degree");
  return r;
}

void require_ramified(const FibreProductSpec& fp) {
  const std::size_t c = fp.components.size();
  if (c == 0) throw InvalidInput("fibre product without components");
  if (c > 20) throw CapacityError("too many components to check ramification");
  for (const auto& comp : fp.components) {
    if (!(comp.field() == fp.field)) throw FieldMismatch("component over a different field");
  }
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << c); ++mask) {
    SparsePoly sum(fp.field);
    for (std::size_t j = 0; j < c; ++j) {
      if ((mask >> j) & 1) sum += fp.components[j];
    }
    require_ramified(sum);
  }
}

void require_irreducible(const CurveSpec& c) {
  validate(c);
  if (!is_irreducible(c)) throw ReducibleCover("curve is reducible: some quotient is trivial");
}

// Images S(e_j) of the basis of F_{2^M}; the annihilator masks of Im S and
// log2 of the kernel size.
struct ImageData {
  std::vector<std::uint64_t> masks;
  unsigned kernel_dim = 0;
  std::vector<FieldElem> images;
};

ImageData image_data(const LinPoly& s, const Field& ext) {
  const unsigned m = ext.degree();
  ImageData d;
  for (unsigned j = 0; j < m; ++j) d.images.push_back(lin_eval(s, FieldElem{std::uint64_t{1} << j}));
  const unsigned rank = f2_rank(d.images);
  d.kernel_dim = m - rank;
  // Transpose: column i collects bit i of every image.
  std::vector<FieldElem> cols(m);
  for (unsigned i = 0; i < m; ++i) {
    std::uint64_t col = 0;
    for (unsigned j = 0; j < m; ++j) col |= ((d.images[j].bits >> i) & 1) << j;
    cols[i].bits = col;
  }
  for (FieldElem v : f2_linear_solve(cols, FieldElem{0}).kernel) d.masks.push_back(v.bits);
  return d;
}

std::uint64_t finish(const CountPlan& plan) { return 1 + count_hits_parallel(plan) * plan.fibre_size; }

BigInt pow2(std::uint64_t e) { return BigInt(1) << static_cast<unsigned>(e); }

long long v2(const BigInt& x) { return static_cast<long long>(boost::multiprecision::lsb(abs(x))); }

BigInt binomial(unsigned n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

unsigned definition_degree(const SparsePoly& f) {
  unsigned d = 1;
  for (const auto& [e, c] : f.terms()) d = std::lcm(d, subfield_degree(f.field(), c));
  return d;
}

// Exponents 1 and 2^e + 1 only (constants allowed): y^2 + y = x R(x).
bool xr_shaped(const SparsePoly& f) {
  for (const auto& [e, c] : f.terms()) {
    if (e <= 1) continue;
    if (!std::has_single_bit(e - 1)) return false;
  }
  return true;
}

}  // namespace

Budget Budget::from_env() {
  Budget b;
  b.log2_points = env_unsigned("SSCURVE_BUDGET_LOG2", b.log2_points);
  b.max_field_degree = env_unsigned("SSCURVE_MAX_FIELD_DEGREE", b.max_field_degree);
  return b;
}

CountPlan make_plan(const SparsePoly& as_rhs, unsigned k, const Budget& budget) {
  if (k == 0) throw InvalidInput("extension degree must be positive");
  const SparsePoly r = require_ramified(as_rhs);
  check_budget(as_rhs.field().degree() * k, budget);
  auto [ext, emb] = extend_and_embed(as_rhs.field(), k, budget.max_field_degree);
  CountPlan plan{ext, {compile(sparse_lift(r, emb))}, {{ext.trace_mask()}}, 2};
  return plan;
}

CountPlan make_plan(const CurveSpec& c, unsigned k, const Budget& budget) {
  if (k == 0) throw InvalidInput("extension degree must be positive");
  require_irreducible(c);
  check_budget(c.field.degree() * k, budget);
  auto [ext, emb] = extend_and_embed(c.field, k, budget.max_field_degree);
  ImageData img = image_data(lin_lift(c.S, emb), ext);
  CountPlan plan{ext, {compile(sparse_lift(c.rhs(), emb))}, {std::move(img.masks)}, std::uint64_t{1} << img.kernel_dim};
  return plan;
}

std::uint64_t count_points(const SparsePoly& as_rhs, unsigned k, const Budget& budget) {
  return finish(make_plan(as_rhs, k, budget));
}

std::uint64_t count_points(const QuotientCurve& q, unsigned k, const Budget& budget) {
  return count_points(q.rhs, k, budget);
}

std::uint64_t count_points(const FibreProductSpec& fp, unsigned k, const Budget& budget) {
  if (k == 0) throw InvalidInput("extension degree must be positive");
  require_ramified(fp);
  check_budget(fp.field.degree() * k, budget);
  auto [ext, emb] = extend_and_embed(fp.field, k, budget.max_field_degree);
  CountPlan plan{ext, {}, {}, std::uint64_t{1} << fp.components.size()};
  for (const auto& comp : fp.components) {
    plan.polys.push_back(compile(sparse_lift(as_reduce(comp), emb)));
    plan.masks.push_back({ext.trace_mask()});
  }
  return finish(plan);
}

std::uint64_t count_points(const CurveSpec& c, unsigned k, const Budget& budget) {
  return finish(make_plan(c, k, budget));
}

std::uint64_t count_points_reference(const SparsePoly& as_rhs, unsigned k, const Budget& budget) {
  require_ramified(as_rhs);
  check_budget(as_rhs.field().degree() * k, budget);
  auto [ext, emb] = extend_and_embed(as_rhs.field(), k, budget.max_field_degree);
  const SparsePoly f = sparse_lift(as_rhs, emb);
  std::uint64_t total = 1;
  for (std::uint64_t x = 0; x < ext.size(); ++x) {
    if (ext.trace(sparse_eval(f, FieldElem{x})) == 0) total += 2;
  }
  return total;
}

std::uint64_t count_points_reference(const FibreProductSpec& fp, unsigned k, const Budget& budget) {
  require_ramified(fp);
  check_budget(fp.field.degree() * k, budget);
  auto [ext, emb] = extend_and_embed(fp.field, k, budget.max_field_degree);
  std::vector<SparsePoly> comps;
  for (const auto& comp : fp.components) comps.push_back(sparse_lift(comp, emb));
  std::uint64_t total = 1;
  for (std::uint64_t x = 0; x < ext.size(); ++x) {
    bool all = true;
    for (const auto& f : comps) all = all && ext.trace(sparse_eval(f, FieldElem{x})) == 0;
    if (all) total += std::uint64_t{1} << comps.size();
  }
  return total;
}

std::uint64_t count_points_reference(const CurveSpec& c, unsigned k, const Budget& budget) {
  require_irreducible(c);
  check_budget(c.field.degree() * k, budget);
  auto [ext, emb] = extend_and_embed(c.field, k, budget.max_field_degree);
  const LinPoly s = lin_lift(c.S, emb);
  const SparsePoly t = sparse_lift(c.rhs(), emb);
  std::vector<FieldElem> images;
  for (unsigned j = 0; j < ext.degree(); ++j) images.push_back(lin_eval(s, FieldElem{std::uint64_t{1} << j}));
  std::uint64_t total = 1;
  for (std::uint64_t x = 0; x < ext.size(); ++x) {
    const LinearSolveResult r = f2_linear_solve(images, sparse_eval(t, FieldElem{x}));
    if (r.solution) total += std::uint64_t{1} << r.kernel.size();
  }
  return total;
}

LPoly lpoly_from_counts(const CountSeries& series) {
  const std::uint64_t g = series.genus;
  if (series.counts.size() < g) throw InvalidInput("need counts for k = 1..g");
  const BigInt q = pow2(series.field_degree);

  for (std::size_t k = 1; k <= series.counts.size(); ++k) {
    const BigInt qk = pow(q, static_cast<unsigned>(k));
    const BigInt dev = BigInt(series.counts[k - 1]) - qk - 1;
    if (series.counts[k - 1] < 1 || dev * dev > 4 * BigInt(g) * g * qk) {
      throw InconsistentCounts("count for k = " + std::to_string(k) + " violates the Weil bound");
    }
  }

  std::vector<BigInt> s(g + 1);
  for (std::uint64_t k = 1; k <= g; ++k) s[k] = pow(q, static_cast<unsigned>(k)) + 1 - series.counts[k - 1];

  std::vector<BigInt> c(2 * g + 1);
  c[0] = 1;
  for (std::uint64_t i = 1; i <= g; ++i) {
    BigInt acc = 0;
    for (std::uint64_t j = 1; j <= i; ++j) acc += s[j] * c[i - j];
    if (acc % i != 0) throw InconsistentCounts("Newton identity step " + std::to_string(i) + " is not integral");
    c[i] = -acc / i;
    const BigInt bound = binomial(static_cast<unsigned>(2 * g), static_cast<unsigned>(i));
    if (c[i] * c[i] > bound * bound * pow(q, static_cast<unsigned>(i))) {
      throw InconsistentCounts("coefficient " + std::to_string(i) + " exceeds its Weil bound");
    }
  }
  for (std::uint64_t i = 0; i < g; ++i) c[2 * g - i] = pow(q, static_cast<unsigned>(g - i)) * c[i];
  return LPoly{std::move(c)};
}

std::vector<BigInt> predicted_counts(const LPoly& l, unsigned field_degree, unsigned kmax) {
  const BigInt q = pow2(field_degree);
  auto coeff = [&](std::size_t i) { return i < l.coeffs.size() ? l.coeffs[i] : BigInt(0); };
  std::vector<BigInt> s(kmax + 1), out;
  for (unsigned k = 1; k <= kmax; ++k) {
    BigInt acc = -BigInt(k) * coeff(k);
    for (unsigned j = 1; j < k; ++j) acc -= s[j] * coeff(k - j);
    s[k] = acc;
    out.push_back(pow(q, k) + 1 - s[k]);
  }
  return out;
}

bool satisfies_functional_equation(const LPoly& l, unsigned field_degree) {
  if (l.coeffs.empty() || l.coeffs.size() % 2 == 0 || l.coeffs[0] != 1) return false;
  const std::uint64_t g = l.genus();
  const BigInt q = pow2(field_degree);
  for (std::uint64_t i = 0; i <= g; ++i) {
    if (l.coeffs[2 * g - i] != pow(q, static_cast<unsigned>(g - i)) * l.coeffs[i]) return false;
  }
  return true;
}

NPReport newton_polygon(const LPoly& l, unsigned field_degree) {
  NPReport rep;
  std::vector<std::pair<long long, long long>> pts;
  for (std::size_t i = 0; i < l.coeffs.size(); ++i) {
    if (l.coeffs[i] != 0) pts.emplace_back(static_cast<long long>(i), v2(l.coeffs[i]));
  }
  std::vector<std::pair<long long, long long>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // drop b when it lies on or above the segment a -> p
      const __int128 cross = static_cast<__int128>(b.first - a.first) * (p.second - a.second) -
                             static_cast<__int128>(b.second - a.second) * (p.first - a.first);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const long long dx = hull[i].first - hull[i - 1].first;
    const Slope slope(hull[i].second - hull[i - 1].second, dx);
    for (long long j = 0; j < dx; ++j) rep.slopes.push_back(slope);
  }
  const Slope half(static_cast<long long>(field_degree), 2);
  rep.supersingular = std::all_of(rep.slopes.begin(), rep.slopes.end(), [&](const Slope& s) { return s == half; });
  const long long g = static_cast<long long>(l.genus());
  const bool endpoints = !pts.empty() && pts.front() == std::pair<long long, long long>{0, 0} &&
                         pts.back() == std::pair<long long, long long>{2 * g, g * field_degree};
  rep.supersingular = rep.supersingular && endpoints && static_cast<long long>(rep.slopes.size()) == 2 * g;
  return rep;
}

NumericZeta numeric_zeta(const std::function<std::uint64_t(unsigned)>& count, unsigned field_degree,
                         std::uint64_t genus, const Budget& budget) {
  CountSeries series{field_degree, {}, genus};
  for (unsigned k = 1; k <= genus; ++k) series.counts.push_back(count(k));
  NumericZeta z;
  z.lpoly = lpoly_from_counts(series);
  z.np = newton_polygon(z.lpoly, field_degree);
  if (genus > 0 && fits(field_degree * (genus + 2), budget)) {
    const auto predicted = predicted_counts(z.lpoly, field_degree, static_cast<unsigned>(genus + 2));
    z.predictions_checked = true;
    for (unsigned k = static_cast<unsigned>(genus) + 1; k <= genus + 2; ++k) {
      z.predictions_match = z.predictions_match && predicted[k - 1] == BigInt(count(k));
    }
  }
  return z;
}

SparsePoly descend(const SparsePoly& f) {
  const unsigned d = definition_degree(f);
  if (d == f.field().degree()) return f;
  const Field sub = Field::make(d);
  const Embedding emb = embed(sub, f.field());
  SparsePoly out(sub);
  for (const auto& [e, c] : f.terms()) {
    const auto pre = emb.preimage(c);
    if (!pre) throw InternalConsistency("coefficient missing from its subfield");
    out.add_term(e, *pre);
  }
  return out;
}

namespace {

void record(VerifyReport& rep, const std::string& name, bool ok) {
  auto [it, inserted] = rep.checks.emplace(name, ok);
  if (!inserted) it->second = it->second && ok;
}

// Verdict for a single Artin-Schreier piece over its field of definition.
PieceReport verify_piece(const SparsePoly& rhs, const Budget& budget, VerifyReport& rep) {
  PieceReport piece;
  const SparsePoly f = descend(as_reduce(rhs));
  piece.genus = as_genus(f);
  piece.field_degree = f.field().degree();
  if (piece.genus == 0) {
    piece.method = "rational";
    piece.supersingular = true;
    return piece;
  }
  if (fits(static_cast<std::uint64_t>(piece.field_degree) * piece.genus, budget)) {
    const NumericZeta z =
        numeric_zeta([&](unsigned k) { return count_points(f, k, budget); }, piece.field_degree, piece.genus, budget);
    piece.method = "numeric";
    piece.supersingular = z.np.supersingular;
    record(rep, "functional_equation", satisfies_functional_equation(z.lpoly, piece.field_degree));
    if (z.predictions_checked) record(rep, "predictions", z.predictions_match);
    piece.lpoly = z.lpoly;
    return piece;
  }
  if (xr_shaped(f)) {
    piece.method = "certified-not-recounted";
    piece.supersingular = true;
    return piece;
  }
  piece.method = "undecided";
  piece.supersingular = false;
  return piece;
}

void settle(VerifyReport& rep) {
  bool all = true;
  bool certified = false;
  for (const auto& p : rep.pieces) {
    all = all && p.supersingular;
    certified = certified || p.method == "certified-not-recounted";
  }
  if (!all) {
    rep.verdict = Verdict::kNotSupersingular;
  } else {
    rep.verdict = certified ? Verdict::kCertified : Verdict::kSupersingular;
  }
}

void whole_curve(VerifyReport& rep, const std::function<std::uint64_t(unsigned)>& count, unsigned field_degree,
                 const Budget& budget) {
  const NumericZeta z = numeric_zeta(count, field_degree, rep.genus, budget);
  rep.path = "curve";
  rep.lpoly = z.lpoly;
  rep.slopes = z.np.slopes;
  record(rep, "functional_equation", satisfies_functional_equation(z.lpoly, field_degree));
  if (z.predictions_checked) record(rep, "predictions", z.predictions_match);
  rep.verdict = z.np.supersingular ? Verdict::kSupersingular : Verdict::kNotSupersingular;
}

}  // namespace

VerifyReport verify_supersingular(const CurveSpec& c, const Budget& budget) {
  validate(c);
  VerifyReport rep;
  const GenusProfile prof = genus_profile(c, budget.max_field_degree);
  record(rep, "irreducible", prof.irreducible);
  if (!prof.irreducible) {
    rep.path = "quotients";
    rep.verdict = Verdict::kNotSupersingular;
    return rep;
  }
  rep.genus = prof.total();
  const unsigned n_deg = c.field.degree();

  try {
    if (fits(static_cast<std::uint64_t>(n_deg) * rep.genus, budget)) {
      whole_curve(rep, [&](unsigned k) { return count_points(c, k, budget); }, n_deg, budget);
      return rep;
    }
  } catch (const InconsistentCounts&) {
    record(rep, "weil", false);
    rep.verdict = Verdict::kNotSupersingular;
    return rep;
  }

  if (prof.route == "explicit") {
    rep.path = "quotients";
    const AlphaSpace a = solve_alpha_space(c, budget.max_field_degree);
    const auto quotients = decomposition(c, a);
    std::map<std::uint64_t, PieceReport> memo;  // alpha bits -> verdict, shared across a Frobenius orbit
    std::uint64_t total = 0;
    for (const QuotientCurve& q : quotients) {
      PieceReport piece;
      bool found = false;
      for (unsigned j = 1; j * n_deg < a.ambient.degree() && !found; ++j) {
        const auto it = memo.find(a.ambient.frobenius(q.alpha, static_cast<long long>(j * n_deg)).bits);
        if (it != memo.end()) {
          piece = it->second;
          found = true;
        }
      }
      if (!found) {
        try {
          piece = verify_piece(q.rhs, budget, rep);
        } catch (const InconsistentCounts&) {
          record(rep, "weil", false);
          piece.genus = q.genus;
          piece.method = "numeric";
          piece.supersingular = false;
        }
        memo.emplace(q.alpha.bits, piece);
      }
      piece.alpha = to_hex(q.alpha.bits);
      total += piece.genus;
      rep.pieces.push_back(std::move(piece));
    }
    record(rep, "genus_matches_certificate", total == rep.genus);
  } else {
    rep.path = "certificate";
    for (const auto& [g, count] : prof.counts) {
      PieceReport piece;
      piece.multiplicity = count;
      piece.genus = g;
      piece.method = g == 0 ? "rational" : "certified-not-recounted";
      piece.supersingular = true;
      rep.pieces.push_back(std::move(piece));
    }
  }
  settle(rep);
  return rep;
}

VerifyReport verify_supersingular(const FibreProductSpec& fp, const Budget& budget) {
  VerifyReport rep;
  require_ramified(fp);
  record(rep, "irreducible", true);
  rep.genus = certificate(fp).total;
  const unsigned n_deg = fp.field.degree();

  try {
    if (fits(static_cast<std::uint64_t>(n_deg) * rep.genus, budget)) {
      whole_curve(rep, [&](unsigned k) { return count_points(fp, k, budget); }, n_deg, budget);
      return rep;
    }
  } catch (const InconsistentCounts&) {
    record(rep, "weil", false);
    rep.verdict = Verdict::kNotSupersingular;
    return rep;
  }

  rep.path = "quotients";
  const std::size_t c = fp.components.size();
  std::uint64_t total = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << c); ++mask) {
    SparsePoly sum(fp.field);
    for (std::size_t j = 0; j < c; ++j) {
      if ((mask >> j) & 1) sum += fp.components[j];
    }
    PieceReport piece;
    try {
      piece = verify_piece(sum, budget, rep);
    } catch (const InconsistentCounts&) {
      record(rep, "weil", false);
      piece.genus = as_genus(sum);
      piece.method = "numeric";
      piece.supersingular = false;
    }
    piece.alpha = to_hex(mask);
    total += piece.genus;
    rep.pieces.push_back(std::move(piece));
  }
  record(rep, "genus_matches_certificate", total == rep.genus);
  settle(rep);
  return rep;
}

AdditivityReport powersum_additivity(const CurveSpec& c, unsigned kmax, const Budget& budget) {
  const AlphaSpace a = solve_alpha_space(c, budget.max_field_degree);
  const auto quotients = decomposition(c, a);
  AdditivityReport rep;
  rep.ambient_degree = a.ambient.degree();
  const unsigned step = a.ambient.degree() / c.field.degree();
  for (unsigned k = 1; k <= kmax; ++k) {
    const BigInt base = pow2(static_cast<std::uint64_t>(rep.ambient_degree) * k) + 1;
    const BigInt lhs = BigInt(count_points(c, step * k, budget)) - base;
    BigInt rhs = 0;
    for (const QuotientCurve& q : quotients) rhs += BigInt(count_points(q, k, budget)) - base;
    rep.holds = rep.holds && lhs == rhs;
    rep.sides.emplace_back(lhs, rhs);
  }
  return rep;
}

bool powersum_additivity_check(const CurveSpec& c, unsigned kmax, const Budget& budget) {
  return powersum_additivity(c, kmax, budget).holds;
}

}  // namespace sscurve
