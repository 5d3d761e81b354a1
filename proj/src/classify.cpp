#include "sscurve/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <boost/dynamic_bitset.hpp>

#include "sscurve/errors.hpp"

namespace sscurve {

namespace {

std::uint64_t order_mask(unsigned m) { return m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1; }

// Smallest extension of `base` holding all d-th roots of c, with those roots.
struct RootSet {
  Field field;
  Embedding embedding;
  std::vector<FieldElem> roots;
};

RootSet power_roots(const Field& base, FieldElem c, std::uint64_t d, unsigned max_degree) {
  if (d == 2) return RootSet{base, Embedding::identity(base), {base.sqrt(c)}};
  for (unsigned k = 1; base.degree() * k <= max_degree; ++k) {
    const unsigned m = base.degree() * k;
    const std::uint64_t order = order_mask(m);
    if (order % d != 0) continue;
    auto [ext, emb] = extend_and_embed(base, k, max_degree);
    const FieldElem lc = emb.apply(c);
    if (ext.pow(lc, order / d) != ext.one()) continue;
    std::vector<FieldElem> coeffs(d + 1);
    coeffs[0] = lc;
    coeffs[d] = ext.one();
    std::vector<FieldElem> roots = roots_in_field(ext, std::move(coeffs));
    if (roots.size() != d) throw InternalConsistency("power equation did not split");
    return RootSet{ext, emb, std::move(roots)};
  }
  throw CapacityError("splitting field of X^" + std::to_string(d) + " = c exceeds the degree limit");
}

// Both inputs over one field: the larger when the degrees divide.
std::pair<LinPoly, LinPoly> common(const LinPoly& a, const LinPoly& b) {
  if (a.field() == b.field()) return {a, b};
  const unsigned da = a.field().degree();
  const unsigned db = b.field().degree();
  if (db % da == 0) return {lin_lift(a, embed(a.field(), b.field())), b};
  if (da % db == 0) return {a, lin_lift(b, embed(b.field(), a.field()))};
  throw FieldMismatch("inputs are not over a common field");
}

// Re-expresses rho in the smallest field containing it and the base field.
IsoWitness shrink(const Field& base, const Field& ext, FieldElem rho, std::string mode) {
  const unsigned d = std::lcm(base.degree(), subfield_degree(ext, rho));
  if (d == ext.degree()) return IsoWitness{ext, rho, std::move(mode)};
  const Field small = Field::make(d);
  const auto pre = embed(small, ext).preimage(rho);
  if (!pre) throw InternalConsistency("witness missing from its subfield");
  return IsoWitness{small, *pre, std::move(mode)};
}

using Bits = boost::dynamic_bitset<>;

Bits flatten(const LinPoly& r, unsigned slots) {
  const unsigned m = r.field().degree();
  Bits v(static_cast<std::size_t>(slots) * m);
  for (unsigned i = 0; i < slots; ++i) {
    const std::uint64_t c = r.coeff(i).bits;
    for (unsigned b = 0; b < m; ++b) {
      if ((c >> b) & 1) v.set(static_cast<std::size_t>(i) * m + b);
    }
  }
  return v;
}

std::size_t bit_rank(std::vector<Bits> rows) {
  std::size_t rank = 0;
  std::map<std::size_t, Bits> pivots;
  for (Bits& row : rows) {
    for (;;) {
      const std::size_t p = row.find_first();
      if (p == Bits::npos) break;
      const auto it = pivots.find(p);
      if (it == pivots.end()) {
        pivots.emplace(p, row);
        ++rank;
        break;
      }
      row ^= it->second;
    }
  }
  return rank;
}

bool same_span(const std::vector<LinPoly>& a, const std::vector<LinPoly>& b, unsigned slots) {
  std::vector<Bits> ra, rb;
  for (const auto& r : a) ra.push_back(flatten(r, slots));
  for (const auto& r : b) rb.push_back(flatten(r, slots));
  const std::size_t rank_a = bit_rank(ra);
  if (rank_a != bit_rank(rb)) return false;
  ra.insert(ra.end(), rb.begin(), rb.end());
  return bit_rank(std::move(ra)) == rank_a;
}

}  // namespace

LinPoly e_poly(const LinPoly& r) {
  if (r.degree() < 1) throw InvalidInput("e_poly needs 2-degree h >= 1");
  const Field& f = r.field();
  const auto h = static_cast<unsigned>(r.degree());
  std::vector<FieldElem> e(2 * h + 1);
  for (unsigned i = 0; i <= h; ++i) {
    const FieldElem a = r.coeff(i);
    e[h + i] += f.frobenius(a, h);
    e[h - i] += f.frobenius(a, h - i);
  }
  return LinPoly(f, std::move(e));
}

RadicalBasis radical(const LinPoly& r, unsigned max_degree) {
  const LinPoly e = e_poly(r);
  const unsigned k = splitting_degree(e, max_degree);
  auto [ambient, emb] = extend_and_embed(r.field(), k, max_degree);
  return RadicalBasis{ambient, lin_kernel(lin_lift(e, emb), ambient)};
}

LinPoly scaling_orbit(const LinPoly& r, FieldElem rho) {
  const Field& f = r.field();
  if (rho.is_zero()) throw InvalidInput("rho must be nonzero");
  if (!f.contains(rho)) throw FieldMismatch("rho outside the field of R");
  std::vector<FieldElem> out(r.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = f.mul(r.coeff(i), f.mul(f.frobenius(rho, static_cast<long long>(i)), rho));
  }
  return LinPoly(f, std::move(out));
}

std::optional<IsoWitness> curves_isomorphic(const LinPoly& r_in, const LinPoly& r2_in, unsigned max_degree) {
  if (r_in.degree() < 1 || r2_in.degree() < 1) throw InvalidInput("curves_isomorphic needs 2-degree h >= 1");
  const auto [r, r2] = common(r_in, r2_in);
  if (r.degree() != r2.degree()) return std::nullopt;
  const auto h = static_cast<unsigned>(r.degree());
  std::optional<unsigned> i0;
  for (unsigned i = 1; i <= h; ++i) {
    if (r.coeff(i).is_zero() != r2.coeff(i).is_zero()) return std::nullopt;
    if (!i0 && !r.coeff(i).is_zero()) i0 = i;
  }
  const Field& f = r.field();
  const FieldElem c = f.div(r2.coeff(*i0), r.coeff(*i0));
  const RootSet rs = power_roots(f, c, (std::uint64_t{1} << *i0) + 1, max_degree);
  const Field& ext = rs.field;
  const std::string mode = h == 1 ? "as-covers" : "curves";
  for (FieldElem rho : rs.roots) {
    bool ok = true;
    for (unsigned i = 1; i <= h && ok; ++i) {
      const FieldElem scale = ext.mul(ext.frobenius(rho, i), rho);
      ok = ext.mul(rs.embedding.apply(r.coeff(i)), scale) == rs.embedding.apply(r2.coeff(i));
    }
    if (ok) return shrink(f, ext, rho, mode);
  }
  return std::nullopt;
}

std::optional<IsoWitness> covers_isomorphic(const std::vector<LinPoly>& l_in, const std::vector<LinPoly>& l2_in,
                                            unsigned max_degree) {
  if (l_in.size() != l2_in.size()) throw InvalidInput("spaces must have equal dimensions");
  if (l_in.empty()) throw InvalidInput("spaces must be nonempty");
  if (l_in.size() > 20) throw CapacityError("space too large to enumerate");

  // Lift everything to the largest input field.
  Field f = l_in.front().field();
  for (const auto* l : {&l_in, &l2_in}) {
    for (const auto& r : *l) {
      if (r.field().degree() > f.degree()) f = r.field();
    }
  }
  auto lift_all = [&](const std::vector<LinPoly>& l) {
    std::vector<LinPoly> out;
    for (const auto& r : l) {
      if (r.field() == f) {
        out.push_back(r);
      } else if (f.degree() % r.field().degree() == 0) {
        out.push_back(lin_lift(r, embed(r.field(), f)));
      } else {
        throw FieldMismatch("inputs are not over a common field");
      }
    }
    return out;
  };
  const std::vector<LinPoly> l = lift_all(l_in);
  const std::vector<LinPoly> l2 = lift_all(l2_in);

  int h = -1;
  const LinPoly* top = nullptr;
  for (const auto& r : l) {
    if (r.degree() > h) {
      h = r.degree();
      top = &r;
    }
  }
  int h2 = -1;
  for (const auto& r : l2) h2 = std::max(h2, r.degree());
  if (h != h2) return std::nullopt;
  const auto slots = static_cast<unsigned>(h + 1);

  if (h < 0) return IsoWitness{f, f.one(), "covers"};  // both spaces are zero
  if (same_span(l, l2, slots)) return IsoWitness{f, f.one(), "covers"};

  // Top coefficients at 2-degree h of the nonzero members of span(l2).
  std::set<FieldElem> targets;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << l2.size()); ++mask) {
    FieldElem t{0};
    for (std::size_t j = 0; j < l2.size(); ++j) {
      if ((mask >> j) & 1) t += l2[j].coeff(static_cast<std::size_t>(h));
    }
    if (!t.is_zero()) targets.insert(t);
  }

  const FieldElem b = top->coeff(static_cast<std::size_t>(h));
  const std::uint64_t d = (std::uint64_t{1} << h) + 1;
  for (FieldElem t : targets) {
    const RootSet rs = power_roots(f, f.div(t, b), d, max_degree);
    std::vector<LinPoly> target;
    for (const auto& r : l2) target.push_back(lin_lift(r, rs.embedding));
    for (FieldElem rho : rs.roots) {
      std::vector<LinPoly> moved;
      for (const auto& r : l) moved.push_back(scaling_orbit(lin_lift(r, rs.embedding), rho));
      if (same_span(moved, target, slots)) return shrink(f, rs.field, rho, "covers");
    }
  }
  return std::nullopt;
}

}  // namespace sscurve
