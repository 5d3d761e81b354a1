#include "sscurve/count_kernels.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include <omp.h>

#include "sscurve/errors.hpp"

namespace sscurve {

CompiledPoly compile(const SparsePoly& f) {
  CompiledPoly out;
  for (const auto& [e, c] : f.terms()) {
    out.terms.push_back({c, e});
    if (e != 0) out.chain_length = std::max(out.chain_length, static_cast<unsigned>(std::bit_width(e)));
  }
  return out;
}

namespace {

inline bool passes(const CountPlan& plan, FieldElem x, std::array<FieldElem, 64>& chain, unsigned chain_length) {
  const Field& f = plan.field;
  chain[0] = x;
  for (unsigned j = 1; j < chain_length; ++j) chain[j] = f.sqr(chain[j - 1]);
  for (std::size_t i = 0; i < plan.polys.size(); ++i) {
    FieldElem value{0};
    for (const auto& term : plan.polys[i].terms) {
      std::uint64_t e = term.exp;
      if (e == 0) {
        value += term.coeff;
        continue;
      }
      FieldElem p = chain[static_cast<unsigned>(std::countr_zero(e))];
      e &= e - 1;
      while (e != 0) {
        p = f.mul(p, chain[static_cast<unsigned>(std::countr_zero(e))]);
        e &= e - 1;
      }
      value += f.mul(term.coeff, p);
    }
    for (std::uint64_t m : plan.masks[i]) {
      if (std::popcount(value.bits & m) & 1) return false;
    }
  }
  return true;
}

unsigned plan_chain(const CountPlan& plan) {
  unsigned len = 1;
  for (const auto& p : plan.polys) len = std::max(len, p.chain_length);
  return len;
}

}  // namespace

std::uint64_t count_hits_serial(const CountPlan& plan, std::uint64_t begin, std::uint64_t end) {
  std::array<FieldElem, 64> chain{};
  const unsigned len = plan_chain(plan);
  std::uint64_t hits = 0;
  for (std::uint64_t x = begin; x < end; ++x) {
    if (passes(plan, FieldElem{x}, chain, len)) ++hits;
  }
  return hits;
}

std::uint64_t count_hits_parallel(const CountPlan& plan) {
  const std::uint64_t size = plan.field.size();
  if (size == 0) throw CapacityError("field too large to enumerate");
  const unsigned len = plan_chain(plan);
  std::uint64_t hits = 0;
#pragma omp parallel reduction(+ : hits)
  {
    std::array<FieldElem, 64> chain{};
#pragma omp for schedule(static)
    for (std::int64_t x = 0; x < static_cast<std::int64_t>(size); ++x) {
      if (passes(plan, FieldElem{static_cast<std::uint64_t>(x)}, chain, len)) ++hits;
    }
  }
  return hits;
}

}  // namespace sscurve
