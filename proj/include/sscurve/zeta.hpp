#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "sscurve/builder.hpp"
#include "sscurve/count_kernels.hpp"
#include "sscurve/field.hpp"
#include "sscurve/quotient.hpp"

namespace sscurve {

struct Budget {
  unsigned log2_points = 24;        // largest field enumerated: 2^log2_points elements
  unsigned max_field_degree = 64;   // largest ambient field degree

  // Overrides from SSCURVE_BUDGET_LOG2 / SSCURVE_MAX_FIELD_DEGREE when set.
  static Budget from_env();
};

// #C(F_{q^k}) by enumeration of the affine line, plus the single point at
// infinity (asserted: every right side must reduce to odd degree).
std::uint64_t count_points(const SparsePoly& as_rhs, unsigned k, const Budget& budget = {});
std::uint64_t count_points(const QuotientCurve& q, unsigned k, const Budget& budget = {});
std::uint64_t count_points(const FibreProductSpec& fp, unsigned k, const Budget& budget = {});
std::uint64_t count_points(const CurveSpec& c, unsigned k, const Budget& budget = {});

// Straight-line reference implementations: no plan compilation, no OpenMP,
// fibres decided by direct evaluation and linear solving.
std::uint64_t count_points_reference(const SparsePoly& as_rhs, unsigned k, const Budget& budget = {});
std::uint64_t count_points_reference(const FibreProductSpec& fp, unsigned k, const Budget& budget = {});
std::uint64_t count_points_reference(const CurveSpec& c, unsigned k, const Budget& budget = {});

// Plans used by count_points, exposed for chunked counting and benchmarks.
CountPlan make_plan(const SparsePoly& as_rhs, unsigned k, const Budget& budget = {});
CountPlan make_plan(const CurveSpec& c, unsigned k, const Budget& budget = {});

struct CountSeries {
  unsigned field_degree = 1;          // q = 2^field_degree
  std::vector<std::uint64_t> counts;  // counts[k-1] = #C(F_{q^k})
  std::uint64_t genus = 0;
};

struct LPoly {
  std::vector<BigInt> coeffs;  // c_0 .. c_{2g}

  std::uint64_t genus() const { return coeffs.size() / 2; }
  friend bool operator==(const LPoly&, const LPoly&) = default;
};

// Newton identities on the first g counts, completed by the functional
// equation. Throws InconsistentCounts on a Weil-bound violation or a
// non-integral Newton step.
LPoly lpoly_from_counts(const CountSeries& series);

// #C(F_{q^k}) for k = 1..kmax implied by L.
std::vector<BigInt> predicted_counts(const LPoly& l, unsigned field_degree, unsigned kmax);

bool satisfies_functional_equation(const LPoly& l, unsigned field_degree);

using Slope = boost::rational<long long>;

struct NPReport {
  std::vector<Slope> slopes;  // 2-adic slopes with multiplicity, ascending
  bool supersingular = false;
};

// Lower convex hull of (i, v_2(c_i)); supersingular iff every slope is N/2.
NPReport newton_polygon(const LPoly& l, unsigned field_degree);

// ---- verification ----

enum class Verdict { kSupersingular, kNotSupersingular, kCertified };

struct PieceReport {
  std::string alpha;  // hex, in the ambient field of the alpha space ("" for aggregated pieces)
  std::uint64_t multiplicity = 1;
  std::uint64_t genus = 0;
  unsigned field_degree = 0;  // field of definition of the piece
  std::string method;         // "numeric", "rational", "certified-not-recounted"
  bool supersingular = false;
  std::optional<LPoly> lpoly;
};

struct VerifyReport {
  std::uint64_t genus = 0;
  std::string path;  // "curve", "quotients", "certificate"
  Verdict verdict = Verdict::kNotSupersingular;
  std::optional<LPoly> lpoly;
  std::vector<Slope> slopes;
  std::vector<PieceReport> pieces;
  std::map<std::string, bool> checks;
};

VerifyReport verify_supersingular(const CurveSpec& c, const Budget& budget = {});
VerifyReport verify_supersingular(const FibreProductSpec& fp, const Budget& budget = {});

// Genus-g L-polynomial of a curve from counts k = 1..g, with the predictions
// for k = g+1, g+2 compared against fresh counts when they fit the budget.
struct NumericZeta {
  LPoly lpoly;
  NPReport np;
  bool predictions_checked = false;
  bool predictions_match = true;
};

// count(k) must return #C(F_{q^k}); it is called for k = 1..genus, then for
// genus+1, genus+2 when field_degree * (genus + 2) fits the budget.
NumericZeta numeric_zeta(const std::function<std::uint64_t(unsigned)>& count, unsigned field_degree,
                         std::uint64_t genus, const Budget& budget);

struct AdditivityReport {
  unsigned ambient_degree = 0;
  std::vector<std::pair<BigInt, BigInt>> sides;  // per k: (curve deficit, sum of quotient deficits)
  bool holds = true;
};

// (#C - (Q+1)) = sum_alpha (#C_alpha - (Q+1)) over F_Q, Q = 2^{M k}, M the
// ambient degree of the alpha space, for k = 1..kmax.
AdditivityReport powersum_additivity(const CurveSpec& c, unsigned kmax, const Budget& budget = {});
bool powersum_additivity_check(const CurveSpec& c, unsigned kmax, const Budget& budget = {});

// Quotient right side re-expressed over its smallest field of definition.
SparsePoly descend(const SparsePoly& f);

}  // namespace sscurve
