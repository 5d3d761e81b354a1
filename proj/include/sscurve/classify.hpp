#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sscurve/field.hpp"
#include "sscurve/linops.hpp"

namespace sscurve {

// rho with x -> rho x carrying one family member onto the other, reported in
// the smallest field containing both rho and the inputs' field.
struct IsoWitness {
  Field field;
  FieldElem rho;
  std::string mode;  // "curves", "as-covers" (2-degree 1) or "covers"
};

struct RadicalBasis {
  Field ambient;
  std::vector<FieldElem> basis;
};

// E(x) = R(x)^{2^h} + sum_{i=0}^{h} (a_i x)^{2^{h-i}}, of 2-degree 2h.
LinPoly e_poly(const LinPoly& r);

// Root space of e_poly(r) inside its splitting field.
RadicalBasis radical(const LinPoly& r, unsigned max_degree = kWordFieldDegree);

// a_i -> a_i rho^{2^i + 1}; rho must lie in r's field.
LinPoly scaling_orbit(const LinPoly& r, FieldElem rho);

// Decides whether y^2 + y = x R and y^2 + y = x R2 are isomorphic via some rho
// over the algebraic closure (a_0 ignored). Throws CapacityError when the
// splitting field of the candidate equation exceeds max_degree.
std::optional<IsoWitness> curves_isomorphic(const LinPoly& r, const LinPoly& r2,
                                            unsigned max_degree = kWordFieldDegree);

// Searches rho carrying span_F2{x R : R in l} onto span_F2{x R : R in l2}.
std::optional<IsoWitness> covers_isomorphic(const std::vector<LinPoly>& l, const std::vector<LinPoly>& l2,
                                            unsigned max_degree = kWordFieldDegree);

}  // namespace sscurve
