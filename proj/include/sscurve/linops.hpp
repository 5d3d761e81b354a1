#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sscurve/field.hpp"

namespace sscurve {

// 2-linearized polynomial sum_i a_i x^{2^i}; coeffs[i] = a_i, trailing zeros
// trimmed so that the zero polynomial has no coefficients.
class LinPoly {
 public:
  explicit LinPoly(Field field) : field_(field) {}
  LinPoly(Field field, std::vector<FieldElem> coeffs);

  // x^{2^i}
  static LinPoly monomial(Field field, unsigned i, FieldElem c);
  static LinPoly identity(Field field) { return monomial(field, 0, field.one()); }

  const Field& field() const { return field_; }
  const std::vector<FieldElem>& coeffs() const { return coeffs_; }
  FieldElem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : FieldElem{0}; }
  bool is_zero() const { return coeffs_.empty(); }
  // 2-degree h (index of the top nonzero coefficient), -1 for zero.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  friend bool operator==(const LinPoly&, const LinPoly&) = default;

 private:
  Field field_;
  std::vector<FieldElem> coeffs_;
};

// Sparse polynomial in x with coefficients in a Field; zero terms never stored.
class SparsePoly {
 public:
  using Terms = std::map<std::uint64_t, FieldElem>;

  explicit SparsePoly(Field field) : field_(field) {}
  SparsePoly(Field field, const Terms& terms);

  const Field& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // -1 for the zero polynomial.
  long long degree() const { return terms_.empty() ? -1 : static_cast<long long>(terms_.rbegin()->first); }
  FieldElem coeff(std::uint64_t e) const;

  // Adds c x^e, merging with an existing term.
  void add_term(std::uint64_t e, FieldElem c);
  SparsePoly& operator+=(const SparsePoly& other);

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

 private:
  Field field_;
  Terms terms_;
};

FieldElem lin_eval(const LinPoly& r, FieldElem x);
LinPoly lin_add(const LinPoly& a, const LinPoly& b);
// (r o s)(x) = r(s(x))
LinPoly lin_compose(const LinPoly& r, const LinPoly& s);
// r(x)^{2^k}: coefficients raised to 2^k and all indices shifted by k (k >= 0).
LinPoly lin_twist(const LinPoly& r, unsigned k);
// Coefficients mapped through an embedding into a larger field.
LinPoly lin_lift(const LinPoly& r, const Embedding& emb);
LinPoly lin_scale(const LinPoly& r, FieldElem c);

// F_2-basis of the roots of r in `ambient`. r's field must embed in ambient
// (same field, or degree dividing; the canonical embedding is used).
std::vector<FieldElem> lin_kernel(const LinPoly& r, const Field& ambient);

// Least k such that all roots of r lie in F_{2^{N k}}, N the degree of r's
// field. Requires a_0 != 0. Throws CapacityError once N k exceeds max_degree.
unsigned splitting_degree(const LinPoly& r, unsigned max_degree = kWordFieldDegree);

// x * r(x) as a sparse polynomial.
SparsePoly times_x(const LinPoly& r);
SparsePoly sparse_lift(const SparsePoly& f, const Embedding& emb);
FieldElem sparse_eval(const SparsePoly& f, FieldElem x);

// Artin-Schreier reduction: the unique representative of f + wp(F[x]) with
// only odd exponents (plus possibly a constant).
SparsePoly as_reduce(const SparsePoly& f);

// Genus of the complete curve y^2 + y = f. Throws ReducibleCover when f
// reduces to zero.
std::uint64_t as_genus(const SparsePoly& f);

// Human-readable forms with decreasing exponents, e.g. "y^16+y" and
// "a^6x^40+x^20+a^12x^10+a^9x^5". Coefficients print as powers of the field
// generator "a" where the generator is primitive and the field small enough
// for a table lookup, otherwise as bracketed hex.
std::string format_linpoly(const LinPoly& r, char var = 'y');
std::string format_sparse(const SparsePoly& f, char var = 'x');
std::string format_coeff(const Field& f, FieldElem c);

}  // namespace sscurve
