#pragma once

#include <cstdint>
#include <vector>

#include "sscurve/decomp.hpp"
#include "sscurve/field.hpp"
#include "sscurve/linops.hpp"

namespace sscurve {

// Fibre product of the covers y_j^2 + y_j = f_j over the x-line.
struct FibreProductSpec {
  struct Stratum {
    unsigned u = 0;    // components of this stratum have degree 2^u + 1
    unsigned dim = 0;  // number of components contributed
  };

  Field field;
  std::vector<SparsePoly> components;
  std::vector<Stratum> strata;  // optional bookkeeping, increasing u
};

// Single-equation curve S(y) = sum_k (x R_k(x))^{2^{k-1}}, S monic of 2-degree n.
struct CurveSpec {
  Field field;
  LinPoly S;
  std::vector<LinPoly> R;  // R[k-1] = R_k, k = 1..n

  unsigned n() const { return static_cast<unsigned>(S.degree()); }
  // T = sum_k (x R_k)^{2^{k-1}}
  SparsePoly rhs() const;
};

struct GenusCertificate {
  struct Entry {
    std::uint64_t count = 0;
    std::uint64_t genus = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> strata;
  std::uint64_t total = 0;
};

// Throws InvalidInput when the spec violates its invariants (S monic with
// A_0 != 0, n = |R| >= 1, R not all zero, shared field, representable T).
void validate(const CurveSpec& c);

FibreProductSpec build_components(const GenusDecomposition& d);

// Stratum bookkeeping cross-checked by exhaustive enumeration of all nonzero
// F_2-combinations when there are at most `exhaustive_limit` components.
GenusCertificate certificate(const FibreProductSpec& spec, unsigned exhaustive_limit = 20);

// Single-block fibre product glued into y^{2^m} + y = T over F_{2^m}.
CurveSpec glue_single_block(const FibreProductSpec& spec);

// The recursion G_0 = x, G_i = G_{i-1}^{2^{r_i+1}} + G_{i-1} over F_2.
std::vector<LinPoly> recursion_polys(const GenusDecomposition& d);

// Single equation over F_2 with S = G_t.
CurveSpec build_prime_field(const GenusDecomposition& d);

// Recovers R_1..R_n from a raw right side. Throws NotDefined if some exponent
// is not of the form 2^a (2^e + 1) (or 2^{a+1}) with a < n.
std::vector<LinPoly> to_standard_form(const SparsePoly& t, unsigned n);

// "S(y) = T(x)" with exponents in decreasing order.
std::string format_equation(const CurveSpec& c);

}  // namespace sscurve
