#pragma once

#include <cstdint>
#include <vector>

#include "sscurve/field.hpp"
#include "sscurve/linops.hpp"

namespace sscurve {

// Polynomial prepared for repeated evaluation: x^e is assembled from the
// chain x, x^2, x^4, ... so each term costs popcount(e) - 1 multiplications.
struct CompiledPoly {
  struct Term {
    FieldElem coeff;
    std::uint64_t exp = 0;
  };
  std::vector<Term> terms;
  unsigned chain_length = 0;  // number of squares x^{2^j} needed
};

CompiledPoly compile(const SparsePoly& f);

// Affine fibre test shared by every curve type: x contributes `fibre_size`
// points when, for every polynomial i, parity(f_i(x) & m) = 0 for all masks m
// in masks[i]; otherwise none.
struct CountPlan {
  Field field;
  std::vector<CompiledPoly> polys;
  std::vector<std::vector<std::uint64_t>> masks;
  std::uint64_t fibre_size = 0;
};

// Number of x in [begin, end) (as element bit patterns) passing the test.
std::uint64_t count_hits_serial(const CountPlan& plan, std::uint64_t begin, std::uint64_t end);

// Same over the whole field, OpenMP-parallel over disjoint x-ranges.
std::uint64_t count_hits_parallel(const CountPlan& plan);

}  // namespace sscurve
