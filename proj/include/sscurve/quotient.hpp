#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sscurve/builder.hpp"
#include "sscurve/field.hpp"
#include "sscurve/linops.hpp"

namespace sscurve {

// F_2-space A of alpha solving the linearized equation attached to S,
// realized inside an explicit ambient field containing the curve's field.
struct AlphaSpace {
  Field ambient;
  Embedding embedding;  // curve field -> ambient
  std::vector<FieldElem> basis;

  std::size_t dim() const { return basis.size(); }
  // Element with the given basis coordinates (bit j <-> basis[j]).
  FieldElem element(std::uint64_t coords) const { return span_element(basis, coords); }
};

// S = B^2 + beta B with B monic of 2-degree n - 1.
struct SplitData {
  LinPoly B;
  FieldElem beta;
};

struct QuotientCurve {
  FieldElem alpha;
  SparsePoly rhs;  // reduced right side, odd exponents only
  std::uint64_t genus = 0;
};

// A_0^{2^{n-1}} a^{2^n} + A_1^{2^{n-2}} a^{2^{n-1}} + ... + A_{n-1} a^2 + a
LinPoly alpha_equation(const CurveSpec& c);

AlphaSpace solve_alpha_space(const CurveSpec& c, unsigned max_degree = kWordFieldDegree);

// Solves the coefficient recursion for B. Throws BetaNotAdmissible when the
// final compatibility equation fails.
SplitData split(const LinPoly& s, FieldElem beta);

// Quotient by the hyperplane attached to alpha: w^2 + w = alpha^2 T, reduced.
QuotientCurve quotient_curve(const CurveSpec& c, const AlphaSpace& a, FieldElem alpha);

// The same class written coefficient-wise as sum_k alpha^{2^{2-k}} x R_k(x)
// (already reduced apart from the x^2 terms).
SparsePoly quotient_rhs_lowered(const CurveSpec& c, const AlphaSpace& a, FieldElem alpha);

// sum_k alpha^{2^{n-k}} x R_k(x): the lowered form with every coefficient
// raised to 2^{n-2}. For curves over F_2 this is the lowered form of
// alpha^{2^{n-2}}, so the multiset over A \ {0} is unchanged.
SparsePoly quotient_rhs_raised(const CurveSpec& c, const AlphaSpace& a, FieldElem alpha);

// One quotient per nonzero alpha, alpha enumerated by increasing basis
// coordinates. Throws ReducibleCover when some quotient is trivial.
std::vector<QuotientCurve> decomposition(const CurveSpec& c, const AlphaSpace& a);
std::vector<QuotientCurve> decomposition(const CurveSpec& c, unsigned max_degree = kWordFieldDegree);

// Genus multiset of the quotients (genus -> number of alpha).
struct GenusProfile {
  std::map<std::uint64_t, std::uint64_t> counts;
  bool irreducible = true;
  std::string route;  // "explicit" or "frobenius-module"

  std::uint64_t total() const;
};

// For curves with F_2 coefficients: the root space of the alpha equation is
// F_2[t]/(p(t)) with t acting as squaring, so the quotient genera follow from
// polynomial arithmetic over F_2 without any splitting field.
GenusProfile frobenius_module_profile(const CurveSpec& c, unsigned max_dim = 24);

// Explicit decomposition when the splitting field fits, otherwise the module
// route for F_2 curves; CapacityError if neither applies.
GenusProfile genus_profile(const CurveSpec& c, unsigned max_degree = kWordFieldDegree);

bool is_irreducible(const CurveSpec& c, unsigned max_degree = kWordFieldDegree);

GenusCertificate quotient_certificate(const CurveSpec& c, unsigned max_degree = kWordFieldDegree);

}  // namespace sscurve
