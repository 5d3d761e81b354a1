#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sscurve {

using BigInt = boost::multiprecision::cpp_int;

// Hard ceiling of the single-word representation.
inline constexpr unsigned kWordFieldDegree = 64;

// Element of F_{2^N}: bit i is the coefficient of gamma^i, gamma the class of
// the variable modulo the field's modulus. Only meaningful together with a Field.
struct FieldElem {
  std::uint64_t bits = 0;

  constexpr FieldElem() = default;
  constexpr explicit FieldElem(std::uint64_t b) : bits(b) {}

  constexpr bool is_zero() const { return bits == 0; }
  friend constexpr FieldElem operator+(FieldElem a, FieldElem b) { return FieldElem{a.bits ^ b.bits}; }
  FieldElem& operator+=(FieldElem o) {
    bits ^= o.bits;
    return *this;
  }
  friend constexpr auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

// F_{2^N} = F_2[x] / (modulus), with N <= 64. The modulus is stored without its
// leading x^N term. Cheap to copy; all operations are const.
class Field {
 public:
  // Smallest (as an integer bit pattern) monic irreducible of degree N; for
  // N = 1 that is the polynomial x. Throws CapacityError when N exceeds
  // max_degree or the word size.
  static Field make(unsigned degree, unsigned max_degree = kWordFieldDegree);

  // Field with an explicit modulus given as its full bit pattern (leading bit
  // included). Throws InvalidInput unless the pattern is irreducible of the
  // stated degree.
  static Field from_modulus(unsigned degree, unsigned __int128 modulus);

  unsigned degree() const { return degree_; }
  std::uint64_t mask() const { return mask_; }
  unsigned __int128 modulus() const { return (static_cast<unsigned __int128>(1) << degree_) | modulus_low_; }
  std::uint64_t modulus_low() const { return modulus_low_; }

  bool contains(FieldElem e) const { return (e.bits & ~mask_) == 0; }
  // 2^N, saturating to 0 for N = 64.
  std::uint64_t size() const { return degree_ == 64 ? 0 : (std::uint64_t{1} << degree_); }

  FieldElem zero() const { return FieldElem{0}; }
  FieldElem one() const { return FieldElem{1}; }
  // Residue class of the variable (zero in the field F_2[x]/(x)).
  FieldElem gen() const;

  FieldElem add(FieldElem a, FieldElem b) const { return a + b; }
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem sqr(FieldElem a) const { return mul(a, a); }
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, std::uint64_t e) const;
  FieldElem pow(FieldElem a, const BigInt& e) const;
  FieldElem sqrt(FieldElem a) const;
  // a^{2^k}; negative k applies the inverse Frobenius.
  FieldElem frobenius(FieldElem a, long long k) const;
  // Absolute trace to F_2.
  unsigned trace(FieldElem a) const;
  std::uint64_t trace_mask() const { return trace_mask_; }

  friend bool operator==(const Field& a, const Field& b) {
    return a.degree_ == b.degree_ && a.modulus_low_ == b.modulus_low_;
  }

 private:
  Field(unsigned degree, std::uint64_t modulus_low);

  unsigned degree_ = 1;
  std::uint64_t modulus_low_ = 0;
  std::uint64_t mask_ = 1;
  std::uint64_t trace_mask_ = 0;
  FieldElem sqrt_gen_{0};
};

// Carry-less 64x64 -> 128 product.
unsigned __int128 clmul(std::uint64_t a, std::uint64_t b);

// Rabin irreducibility test for a binary polynomial of degree <= 64 given by
// its full bit pattern.
bool is_irreducible_binary(unsigned __int128 poly);

// Lowercase hex "0x..." of an element or a modulus bit pattern.
std::string to_hex(std::uint64_t bits);
std::string to_hex128(unsigned __int128 bits);
std::uint64_t parse_hex(const std::string& text);
unsigned __int128 parse_hex128(const std::string& text);

// Exact F_2 linear algebra for a map F_2^k -> F_{2^N} given by the images of
// the k unit vectors (k <= 64). Kernel vectors and the solution are returned
// as coordinate vectors packed into FieldElem bits (bit j = coefficient of the
// j-th unit vector).
struct LinearSolveResult {
  std::vector<FieldElem> kernel;
  std::optional<FieldElem> solution;
};

LinearSolveResult f2_linear_solve(std::span<const FieldElem> images, FieldElem target);

// Rank of a set of vectors over F_2.
unsigned f2_rank(std::span<const FieldElem> vectors);

// sum of basis[j] over the set bits j of coords.
FieldElem span_element(std::span<const FieldElem> basis, std::uint64_t coords);

// Field homomorphism base -> ext, determined by the image of the base
// generator; applied as an F_2-linear map.
class Embedding {
 public:
  Embedding(const Field& base, const Field& ext, FieldElem gen_image);

  static Embedding identity(const Field& f);

  const Field& base() const { return base_; }
  const Field& ext() const { return ext_; }
  FieldElem gen_image() const { return gen_image_; }

  FieldElem apply(FieldElem e) const;
  // Preimage of an element of ext, if it lies in the image.
  std::optional<FieldElem> preimage(FieldElem e) const;

 private:
  Field base_;
  Field ext_;
  FieldElem gen_image_;
  std::vector<FieldElem> basis_images_;
};

// Embedding of base into ext, base.degree() | ext.degree(); the generator goes
// to the smallest root of the base modulus in ext.
Embedding embed(const Field& base, const Field& ext);

// ext = Field::make(N k) together with the embedding of base.
std::pair<Field, Embedding> extend_and_embed(const Field& base, unsigned k,
                                             unsigned max_degree = kWordFieldDegree);

// All roots in f of the polynomial sum coeffs[i] X^i (coefficients in f),
// sorted by bit pattern, without multiplicity.
std::vector<FieldElem> roots_in_field(const Field& f, std::vector<FieldElem> coeffs);

// Smallest subfield degree d | N containing e.
unsigned subfield_degree(const Field& f, FieldElem e);

}  // namespace sscurve
