#include "sscurve/linops.hpp"

#include <optional>
#include <unordered_map>

#include "sscurve/errors.hpp"

namespace sscurve {

namespace {

void require_same(const Field& a, const Field& b) {
  if (!(a == b)) throw FieldMismatch("operands live in different fields");
}

void trim(std::vector<FieldElem>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

}  // namespace

LinPoly::LinPoly(Field field, std::vector<FieldElem> coeffs) : field_(field), coeffs_(std::move(coeffs)) {
  for (FieldElem c : coeffs_) {
    if (!field_.contains(c)) throw FieldMismatch("coefficient outside field");
  }
  trim(coeffs_);
}

LinPoly LinPoly::monomial(Field field, unsigned i, FieldElem c) {
  std::vector<FieldElem> coeffs(i + 1);
  coeffs[i] = c;
  return LinPoly(field, std::move(coeffs));
}

SparsePoly::SparsePoly(Field field, const Terms& terms) : field_(field) {
  for (const auto& [e, c] : terms) add_term(e, c);
}

FieldElem SparsePoly::coeff(std::uint64_t e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? FieldElem{0} : it->second;
}

void SparsePoly::add_term(std::uint64_t e, FieldElem c) {
  if (!field_.contains(c)) throw FieldMismatch("coefficient outside field");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& other) {
  require_same(field_, other.field_);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

FieldElem lin_eval(const LinPoly& r, FieldElem x) {
  const Field& f = r.field();
  if (!f.contains(x)) throw FieldMismatch("evaluation point outside field");
  FieldElem acc{0};
  FieldElem p = x;
  for (FieldElem a : r.coeffs()) {
    acc += f.mul(a, p);
    p = f.sqr(p);
  }
  return acc;
}

LinPoly lin_add(const LinPoly& a, const LinPoly& b) {
  require_same(a.field(), b.field());
  std::vector<FieldElem> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return LinPoly(a.field(), std::move(c));
}

LinPoly lin_compose(const LinPoly& r, const LinPoly& s) {
  require_same(r.field(), s.field());
  const Field& f = r.field();
  if (r.is_zero() || s.is_zero()) return LinPoly(f);
  // sum_i a_i (sum_j b_j x^{2^j})^{2^i} = sum_{i,j} a_i b_j^{2^i} x^{2^{i+j}}
  std::vector<FieldElem> c(r.coeffs().size() + s.coeffs().size() - 1);
  for (std::size_t j = 0; j < s.coeffs().size(); ++j) {
    FieldElem b = s.coeffs()[j];
    for (std::size_t i = 0; i < r.coeffs().size(); ++i) {
      c[i + j] += f.mul(r.coeffs()[i], b);
      b = f.sqr(b);
    }
  }
  return LinPoly(f, std::move(c));
}

LinPoly lin_twist(const LinPoly& r, unsigned k) {
  const Field& f = r.field();
  if (r.is_zero()) return LinPoly(f);
  std::vector<FieldElem> c(r.coeffs().size() + k);
  for (std::size_t i = 0; i < r.coeffs().size(); ++i) c[i + k] = f.frobenius(r.coeffs()[i], k);
  return LinPoly(f, std::move(c));
}

LinPoly lin_lift(const LinPoly& r, const Embedding& emb) {
  require_same(r.field(), emb.base());
  std::vector<FieldElem> c;
  c.reserve(r.coeffs().size());
  for (FieldElem a : r.coeffs()) c.push_back(emb.apply(a));
  return LinPoly(emb.ext(), std::move(c));
}

LinPoly lin_scale(const LinPoly& r, FieldElem s) {
  std::vector<FieldElem> c;
  c.reserve(r.coeffs().size());
  for (FieldElem a : r.coeffs()) c.push_back(r.field().mul(a, s));
  return LinPoly(r.field(), std::move(c));
}

std::vector<FieldElem> lin_kernel(const LinPoly& r, const Field& ambient) {
  if (r.is_zero()) throw InvalidInput("kernel of the zero polynomial");
  const LinPoly lifted = r.field() == ambient ? r : lin_lift(r, embed(r.field(), ambient));
  std::vector<FieldElem> images(ambient.degree());
  for (unsigned i = 0; i < ambient.degree(); ++i) images[i] = lin_eval(lifted, FieldElem{std::uint64_t{1} << i});
  // The i-th unit vector is the element with bit i set, so kernel coordinate
  // vectors are the kernel elements themselves.
  return f2_linear_solve(images, FieldElem{0}).kernel;
}

unsigned splitting_degree(const LinPoly& r, unsigned max_degree) {
  if (r.is_zero() || r.coeff(0).is_zero()) throw InvalidInput("splitting degree needs a separable polynomial (a_0 != 0)");
  const Field& f = r.field();
  const auto h = static_cast<std::size_t>(r.degree());
  if (h == 0) return 1;

  // x^{2^h} == sum_{i<h} (a_i / a_h) x^{2^i}  (mod r)
  const FieldElem top_inv = f.inv(r.coeffs()[h]);
  std::vector<FieldElem> fold(h);
  for (std::size_t i = 0; i < h; ++i) fold[i] = f.mul(r.coeffs()[i], top_inv);

  // residue of x^{2^j} mod r, kept as a linearized polynomial of 2-degree < h
  std::vector<FieldElem> cur(h);
  cur[0] = f.one();
  std::vector<FieldElem> next(h);
  const unsigned n = f.degree();
  for (unsigned k = 1;; ++k) {
    if (static_cast<unsigned long long>(n) * k > max_degree) {
      throw CapacityError("splitting field degree exceeds " + std::to_string(max_degree));
    }
    for (unsigned step = 0; step < n; ++step) {
      const FieldElem spill = f.sqr(cur[h - 1]);
      next[0] = FieldElem{0};
      for (std::size_t i = 1; i < h; ++i) next[i] = f.sqr(cur[i - 1]);
      for (std::size_t i = 0; i < h; ++i) next[i] += f.mul(spill, fold[i]);
      std::swap(cur, next);
    }
    bool is_x = cur[0] == f.one();
    for (std::size_t i = 1; i < h && is_x; ++i) is_x = cur[i].is_zero();
    if (is_x) return k;
  }
}

SparsePoly times_x(const LinPoly& r) {
  SparsePoly out(r.field());
  for (std::size_t i = 0; i < r.coeffs().size(); ++i) out.add_term((std::uint64_t{1} << i) + 1, r.coeffs()[i]);
  return out;
}

SparsePoly sparse_lift(const SparsePoly& f, const Embedding& emb) {
  require_same(f.field(), emb.base());
  SparsePoly out(emb.ext());
  for (const auto& [e, c] : f.terms()) out.add_term(e, emb.apply(c));
  return out;
}

FieldElem sparse_eval(const SparsePoly& f, FieldElem x) {
  const Field& fld = f.field();
  FieldElem acc{0};
  for (const auto& [e, c] : f.terms()) acc += fld.mul(c, fld.pow(x, e));
  return acc;
}

SparsePoly as_reduce(const SparsePoly& f) {
  const Field& fld = f.field();
  SparsePoly::Terms terms = f.terms();
  // Largest even exponent first: halving only moves a term downwards.
  for (;;) {
    auto it = terms.rbegin();
    while (it != terms.rend() && (it->first == 0 || (it->first & 1U))) ++it;
    if (it == terms.rend()) break;
    const std::uint64_t half = it->first / 2;
    const FieldElem c = fld.sqrt(it->second);
    terms.erase(std::next(it).base());
    // c^2 x^{2e} = wp(c x^e) + c x^e
    auto [pos, inserted] = terms.try_emplace(half, c);
    if (!inserted) {
      pos->second += c;
      if (pos->second.is_zero()) terms.erase(pos);
    }
  }
  return SparsePoly(fld, terms);
}

std::uint64_t as_genus(const SparsePoly& f) {
  const SparsePoly r = as_reduce(f);
  if (r.is_zero()) throw ReducibleCover("right side is in wp(F[x])");
  const auto d = static_cast<std::uint64_t>(r.degree());
  if (d == 0) return 0;
  return (d - 1) / 2;
}

namespace {

class CoeffNamer {
 public:
  explicit CoeffNamer(const Field& f) : field_(f) {
    if (f.degree() > 16) return;
    const std::uint64_t order = f.size() - 1;
    FieldElem p = f.one();
    for (std::uint64_t k = 0; k < order; ++k) {
      if (log_.contains(p.bits)) return;  // generator not primitive
      log_.emplace(p.bits, k);
      p = f.mul(p, f.gen());
    }
    primitive_ = true;
  }

  // Empty string for the coefficient 1.
  std::string name(FieldElem c) const {
    if (c == field_.one()) return "";
    if (primitive_) {
      const std::uint64_t k = log_.at(c.bits);
      return k == 1 ? "a" : "a^" + std::to_string(k);
    }
    return "[" + to_hex(c.bits) + "]";
  }

 private:
  Field field_;
  bool primitive_ = false;
  std::unordered_map<std::uint64_t, std::uint64_t> log_;
};

std::string format_monomial(const std::string& coeff, char var, std::uint64_t e) {
  if (e == 0) return coeff.empty() ? "1" : coeff;
  std::string out = coeff;
  out.push_back(var);
  if (e != 1) out += "^" + std::to_string(e);
  return out;
}

}  // namespace

std::string format_coeff(const Field& f, FieldElem c) {
  const std::string s = CoeffNamer(f).name(c);
  return s.empty() ? "1" : s;
}

std::string format_linpoly(const LinPoly& r, char var) {
  if (r.is_zero()) return "0";
  const CoeffNamer namer(r.field());
  std::string out;
  for (std::size_t i = r.coeffs().size(); i-- > 0;) {
    const FieldElem c = r.coeffs()[i];
    if (c.is_zero()) continue;
    if (!out.empty()) out.push_back('+');
    out += format_monomial(namer.name(c), var, std::uint64_t{1} << i);
  }
  return out;
}

std::string format_sparse(const SparsePoly& f, char var) {
  if (f.is_zero()) return "0";
  const CoeffNamer namer(f.field());
  std::string out;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    if (!out.empty()) out.push_back('+');
    out += format_monomial(namer.name(it->second), var, it->first);
  }
  return out;
}

}  // namespace sscurve
