#include "sscurve/builder.hpp"

#include <bit>
#include <map>

#include "sscurve/errors.hpp"

namespace sscurve {

namespace {

// 2^a * e, rejecting overflow.
std::uint64_t shifted(std::uint64_t e, unsigned a) {
  if (a >= 64 || (a > 0 && (e >> (64 - a)) != 0)) {
    throw CapacityError("exponent overflows 64 bits");
  }
  return e << a;
}

}  // namespace

SparsePoly CurveSpec::rhs() const {
  SparsePoly t(field);
  for (std::size_t k = 0; k < R.size(); ++k) {
    const auto& coeffs = R[k].coeffs();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i].is_zero()) continue;
      if (i >= 63) throw CapacityError("exponent overflows 64 bits");
      const std::uint64_t e = (std::uint64_t{1} << i) + 1;
      t.add_term(shifted(e, static_cast<unsigned>(k)), field.frobenius(coeffs[i], static_cast<long long>(k)));
    }
  }
  return t;
}

void validate(const CurveSpec& c) {
  if (!(c.S.field() == c.field)) throw InvalidInput("S is over a different field");
  if (c.S.degree() < 1) throw InvalidInput("S must have 2-degree n >= 1");
  if (c.S.coeffs().back() != c.field.one()) throw InvalidInput("S must be monic");
  if (c.S.coeff(0).is_zero()) throw InvalidInput("S needs A_0 != 0");
  if (c.R.size() != c.n()) throw InvalidInput("expected exactly n polynomials R_k");
  bool any = false;
  for (const LinPoly& r : c.R) {
    if (!(r.field() == c.field)) throw InvalidInput("R_k is over a different field");
    any = any || !r.is_zero();
  }
  if (!any) throw InvalidInput("R_k are all zero");
  (void)c.rhs();
}

FibreProductSpec build_components(const GenusDecomposition& d) {
  FibreProductSpec spec{Field::make(d.m), {}, {}};
  const Field& f = spec.field;
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    const unsigned u = d.u[i];
    if (u >= 63) throw CapacityError("component degree overflows 64 bits");
    const std::uint64_t e = (std::uint64_t{1} << u) + 1;
    FieldElem c = f.one();
    for (unsigned j = 0; j <= d.blocks[i].r; ++j) {
      SparsePoly comp(f);
      comp.add_term(e, c);
      spec.components.push_back(std::move(comp));
      c = f.mul(c, f.gen());
    }
    spec.strata.push_back({u, d.blocks[i].r + 1});
  }
  return spec;
}

GenusCertificate certificate(const FibreProductSpec& spec, unsigned exhaustive_limit) {
  GenusCertificate cert;
  const std::size_t k = spec.components.size();

  if (!spec.strata.empty()) {
    unsigned below = 0;
    unsigned dims = 0;
    for (const auto& s : spec.strata) {
      if (below + s.dim >= 64 || s.u == 0 || s.u > 64) throw CapacityError("stratum too large");
      const std::uint64_t count = (std::uint64_t{1} << below) * ((std::uint64_t{1} << s.dim) - 1);
      const std::uint64_t genus = std::uint64_t{1} << (s.u - 1);
      cert.strata.push_back({count, genus});
      cert.total += count * genus;
      below += s.dim;
      dims += s.dim;
    }
    if (dims != k) throw InternalConsistency("strata dimensions do not match component count");
  }

  if (k > exhaustive_limit) {
    if (spec.strata.empty()) throw CapacityError("too many components for exhaustive certificate");
    return cert;
  }

  // Gray-code walk over all nonzero combinations.
  std::map<std::uint64_t, std::uint64_t> by_genus;
  std::uint64_t total = 0;
  SparsePoly acc(spec.field);
  const std::uint64_t combos = std::uint64_t{1} << k;
  for (std::uint64_t step = 1; step < combos; ++step) {
    acc += spec.components[static_cast<std::size_t>(std::countr_zero(step))];
    const std::uint64_t genus = as_genus(acc);
    ++by_genus[genus];
    total += genus;
  }

  if (spec.strata.empty()) {
    for (const auto& [genus, count] : by_genus) cert.strata.push_back({count, genus});
    cert.total = total;
    return cert;
  }

  std::map<std::uint64_t, std::uint64_t> expected;
  for (const auto& e : cert.strata) expected[e.genus] += e.count;
  if (expected != by_genus || total != cert.total) {
    throw InternalConsistency("stratum bookkeeping disagrees with exhaustive genus enumeration");
  }
  return cert;
}

CurveSpec glue_single_block(const FibreProductSpec& spec) {
  if (spec.strata.size() != 1) throw NotDefined("gluing is only supported for a single block");
  const Field& f = spec.field;
  const unsigned m = f.degree();
  if (spec.components.size() != m) throw NotDefined("gluing needs exactly m components over F_{2^m}");

  std::vector<FieldElem> s_coeffs(m + 1);
  s_coeffs[0] = f.one();
  s_coeffs[m] = f.one();

  // y = sum_j gamma^j y_j  gives  y^{2^m} + y = sum_j gamma^j TrP(f_j)
  SparsePoly t(f);
  FieldElem mult = f.one();
  for (const SparsePoly& comp : spec.components) {
    for (const auto& [e, c] : comp.terms()) {
      FieldElem ck = c;
      for (unsigned k = 0; k < m; ++k) {
        t.add_term(shifted(e, k), f.mul(mult, ck));
        ck = f.sqr(ck);
      }
    }
    mult = f.mul(mult, f.gen());
  }

  CurveSpec c{f, LinPoly(f, std::move(s_coeffs)), to_standard_form(t, m)};
  validate(c);
  return c;
}

std::vector<LinPoly> recursion_polys(const GenusDecomposition& d) {
  const Field f2 = Field::make(1);
  std::vector<LinPoly> g{LinPoly::identity(f2)};
  for (const Block& b : d.blocks) g.push_back(lin_add(lin_twist(g.back(), b.r + 1), g.back()));
  return g;
}

CurveSpec build_prime_field(const GenusDecomposition& d) {
  const Field f2 = Field::make(1);
  const std::vector<LinPoly> g = recursion_polys(d);
  const unsigned w = d.w;

  // sum_i G_{i-1}(alpha) x^{2^{u_i}+1} = sum_j x R_{w-j}(x) alpha^{2^j}
  std::vector<std::vector<FieldElem>> r_coeffs(w);
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    const LinPoly& gi = g[i];
    for (std::size_t j = 0; j < gi.coeffs().size(); ++j) {
      if (gi.coeffs()[j].is_zero()) continue;
      auto& target = r_coeffs[w - 1 - j];  // R_{w-j}
      if (target.size() <= d.u[i]) target.resize(d.u[i] + 1);
      target[d.u[i]] += f2.one();
    }
  }

  std::vector<LinPoly> r;
  r.reserve(w);
  for (auto& c : r_coeffs) r.emplace_back(f2, std::move(c));
  CurveSpec c{f2, g.back(), std::move(r)};
  validate(c);
  return c;
}

std::vector<LinPoly> to_standard_form(const SparsePoly& t, unsigned n) {
  const Field& f = t.field();
  std::vector<std::vector<FieldElem>> coeffs(n);
  for (const auto& [e, c] : t.terms()) {
    if (e == 0) throw NotDefined("constant term is not of the form (x R)^{2^a}");
    const unsigned v = static_cast<unsigned>(std::countr_zero(e));
    const std::uint64_t odd = e >> v;
    unsigned a = 0;
    unsigned pos = 0;
    if (odd == 1) {
      // x^{2^v} = (x * x)^{2^{v-1}}
      if (v == 0) throw NotDefined("x^1 is not of the form (x R)^{2^a}");
      a = v - 1;
      pos = 0;
    } else if (std::has_single_bit(odd - 1)) {
      a = v;
      pos = static_cast<unsigned>(std::countr_zero(odd - 1));
    } else {
      throw NotDefined("exponent " + std::to_string(e) + " has odd part not of the form 2^e+1");
    }
    if (a >= n) throw NotDefined("exponent " + std::to_string(e) + " needs R_k with k > n");
    auto& target = coeffs[a];
    if (target.size() <= pos) target.resize(pos + 1);
    target[pos] += f.frobenius(c, -static_cast<long long>(a));
  }
  std::vector<LinPoly> out;
  out.reserve(n);
  for (auto& c : coeffs) out.emplace_back(f, std::move(c));
  return out;
}

std::string format_equation(const CurveSpec& c) {
  return format_linpoly(c.S, 'y') + " = " + format_sparse(c.rhs(), 'x');
}

}  // namespace sscurve
