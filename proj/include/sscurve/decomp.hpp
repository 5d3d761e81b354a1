#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace sscurve {

// A maximal run of set bits in g: 2^s (1 + 2 + ... + 2^r).
struct Block {
  unsigned s = 0;
  unsigned r = 0;

  friend bool operator==(const Block&, const Block&) = default;
};

// Binary block decomposition of a genus together with the derived
// quantities used by both constructions.
struct GenusDecomposition {
  std::uint64_t g = 0;
  std::vector<Block> blocks;    // increasing s
  unsigned w = 0;               // binary weight of g
  unsigned m = 0;               // max block width r_i + 1
  std::vector<unsigned> u;      // u_i = (s_i + 1) - sum_{j<i} (r_j + 1)
  std::optional<std::uint64_t> moduli_bound;  // only for g >= 2

  std::size_t t() const { return blocks.size(); }
};

GenusDecomposition decompose(std::uint64_t g);

// g = sum 2^{s_i} (2^{r_i+1} - 1). Throws InvalidInput on overflow.
std::uint64_t recompose(const std::vector<Block>& blocks);

// True iff the blocks satisfy the gap constraint s_i >= s_{i-1} + r_{i-1} + 2.
bool blocks_well_spaced(const std::vector<Block>& blocks);

// sum (r_i + 1) u_i - 1. Throws NotDefined for g < 2.
std::uint64_t moduli_lower_bound(const GenusDecomposition& d);

}  // namespace sscurve
