#include "sscurve/decomp.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "sscurve/errors.hpp"

namespace sscurve {

GenusDecomposition decompose(std::uint64_t g) {
  if (g == 0) throw InvalidInput("genus must be positive");

  GenusDecomposition d;
  d.g = g;
  unsigned bit = 0;
  while (bit < 64) {
    if (((g >> bit) & 1U) == 0) {
      ++bit;
      continue;
    }
    unsigned run = 0;
    while (bit + run < 64 && ((g >> (bit + run)) & 1U)) ++run;
    d.blocks.push_back(Block{bit, run - 1});
    bit += run;
  }

  unsigned below = 0;  // sum_{j<i} (r_j + 1)
  for (const Block& b : d.blocks) {
    d.u.push_back(b.s + 1 - below);
    below += b.r + 1;
    d.m = std::max(d.m, b.r + 1);
  }
  d.w = below;

  if (g >= 2) d.moduli_bound = moduli_lower_bound(d);
  return d;
}

std::uint64_t recompose(const std::vector<Block>& blocks) {
  unsigned __int128 total = 0;
  for (const Block& b : blocks) {
    if (b.s + b.r + 1 > 64) throw InvalidInput("block exceeds 64 bits");
    const unsigned __int128 run = (static_cast<unsigned __int128>(1) << (b.r + 1)) - 1;
    total += run << b.s;
  }
  if (total >> 64) throw InvalidInput("recomposed genus overflows 64 bits");
  return static_cast<std::uint64_t>(total);
}

bool blocks_well_spaced(const std::vector<Block>& blocks) {
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (blocks[i].s < blocks[i - 1].s + blocks[i - 1].r + 2) return false;
  }
  return true;
}

std::uint64_t moduli_lower_bound(const GenusDecomposition& d) {
  if (d.g < 2) throw NotDefined("moduli bound needs g >= 2");
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    sum += static_cast<std::uint64_t>(d.blocks[i].r + 1) * d.u[i];
  }
  return sum - 1;
}

}  // namespace sscurve
