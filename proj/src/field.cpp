#include "sscurve/field.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <mutex>

#if defined(__PCLMUL__)
#include <wmmintrin.h>
#endif

#include "sscurve/errors.hpp"

namespace sscurve {

using u128 = unsigned __int128;

unsigned __int128 clmul(std::uint64_t a, std::uint64_t b) {
#if defined(__PCLMUL__)
  const __m128i va = _mm_set_epi64x(0, static_cast<long long>(a));
  const __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b));
  const __m128i r = _mm_clmulepi64_si128(va, vb, 0x00);
  const auto lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(r));
  const auto hi = static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)));
  return (static_cast<u128>(hi) << 64) | lo;
#else
  u128 acc = 0;
  const u128 wide = a;
  while (b != 0) {
    const int i = std::countr_zero(b);
    acc ^= wide << i;
    b &= b - 1;
  }
  return acc;
#endif
}

namespace {

// Reduction modulo x^N + low, valid for any (not necessarily irreducible)
// modulus: each fold strictly lowers the degree.
inline std::uint64_t reduce(u128 p, unsigned n, std::uint64_t low, std::uint64_t mask) {
  for (;;) {
    const u128 hi = p >> n;
    if (hi == 0) return static_cast<std::uint64_t>(p);
    p = (p & mask) ^ clmul(static_cast<std::uint64_t>(hi), low);
  }
}

inline std::uint64_t mask_for(unsigned n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

int degree128(u128 p) {
  if (p == 0) return -1;
  const auto hi = static_cast<std::uint64_t>(p >> 64);
  if (hi != 0) return 127 - std::countl_zero(hi);
  return 63 - std::countl_zero(static_cast<std::uint64_t>(p));
}

u128 mod128(u128 a, u128 b) {
  const int db = degree128(b);
  for (int da = degree128(a); da >= db; da = degree128(a)) a ^= b << (da - db);
  return a;
}

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    a = mod128(a, b);
    std::swap(a, b);
  }
  return a;
}

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible_binary(unsigned __int128 poly) {
  const int deg = degree128(poly);
  if (deg <= 0) return false;
  if (deg == 1) return true;
  if (deg > 64) return false;
  const auto n = static_cast<unsigned>(deg);
  const std::uint64_t mask = mask_for(n);
  const auto low = static_cast<std::uint64_t>(poly) & mask;
  if ((low & 1U) == 0) return false;

  // x^{2^k} mod poly for k = 0..n
  std::vector<std::uint64_t> frob(n + 1);
  frob[0] = 2;
  for (unsigned k = 1; k <= n; ++k) frob[k] = reduce(clmul(frob[k - 1], frob[k - 1]), n, low, mask);
  if (frob[n] != 2) return false;
  for (unsigned p : prime_factors(n)) {
    const u128 h = static_cast<u128>(frob[n / p] ^ 2U);
    if (degree128(gcd128(poly, h)) != 0) return false;
  }
  return true;
}

Field::Field(unsigned degree, std::uint64_t modulus_low)
    : degree_(degree), modulus_low_(modulus_low), mask_(mask_for(degree)) {
  const FieldElem g = gen();
  FieldElem s = g;
  for (unsigned i = 1; i < degree_; ++i) s = sqr(s);
  sqrt_gen_ = s;

  FieldElem basis{1};
  for (unsigned i = 0; i < degree_; ++i) {
    FieldElem acc{0};
    FieldElem cur = basis;
    for (unsigned j = 0; j < degree_; ++j) {
      acc += cur;
      cur = sqr(cur);
    }
    if (acc.bits == 1) trace_mask_ |= std::uint64_t{1} << i;
    basis = mul(basis, g);
  }
}

Field Field::make(unsigned degree, unsigned max_degree) {
  if (degree == 0) throw InvalidInput("field degree must be positive");
  if (degree > max_degree || degree > kWordFieldDegree) {
    throw CapacityError("field degree " + std::to_string(degree) + " exceeds limit " +
                        std::to_string(std::min(max_degree, kWordFieldDegree)));
  }
  static std::mutex lock;
  static std::array<std::optional<std::uint64_t>, kWordFieldDegree + 1> cache;
  {
    std::lock_guard<std::mutex> guard(lock);
    if (cache[degree]) return Field(degree, *cache[degree]);
  }
  std::uint64_t low = 0;
  if (degree > 1) {
    const u128 top = static_cast<u128>(1) << degree;
    for (low = 1;; low += 2) {
      if (is_irreducible_binary(top | low)) break;
    }
  }
  {
    std::lock_guard<std::mutex> guard(lock);
    cache[degree] = low;
  }
  return Field(degree, low);
}

Field Field::from_modulus(unsigned degree, unsigned __int128 modulus) {
  if (degree == 0 || degree > kWordFieldDegree) throw InvalidInput("unsupported field degree");
  if (degree128(modulus) != static_cast<int>(degree)) throw InvalidInput("modulus degree mismatch");
  if (!is_irreducible_binary(modulus)) throw InvalidInput("modulus is not irreducible");
  return Field(degree, static_cast<std::uint64_t>(modulus) & mask_for(degree));
}

FieldElem Field::gen() const {
  if (degree_ == 1) return FieldElem{modulus_low_ & 1U};  // x = low (mod x + low)
  return FieldElem{2};
}

FieldElem Field::mul(FieldElem a, FieldElem b) const {
  return FieldElem{reduce(clmul(a.bits, b.bits), degree_, modulus_low_, mask_)};
}

FieldElem Field::pow(FieldElem a, std::uint64_t e) const {
  FieldElem result{1};
  while (e != 0) {
    if (e & 1U) result = mul(result, a);
    a = sqr(a);
    e >>= 1;
  }
  return result;
}

FieldElem Field::pow(FieldElem a, const BigInt& e) const {
  if (a.is_zero()) return e == 0 ? one() : zero();
  const BigInt order = (BigInt(1) << degree_) - 1;
  BigInt r = e % order;
  if (r < 0) r += order;
  return pow(a, static_cast<std::uint64_t>(r));
}

FieldElem Field::inv(FieldElem a) const {
  if (a.is_zero()) throw DivisionByZero("inverse of zero");
  // a^{2^N - 2}
  const std::uint64_t e = degree_ == 64 ? ~std::uint64_t{0} - 1 : (std::uint64_t{1} << degree_) - 2;
  return pow(a, e);
}

FieldElem Field::sqrt(FieldElem a) const {
  std::uint64_t even = 0;
  std::uint64_t odd = 0;
  for (unsigned i = 0; i < degree_; i += 2) {
    even |= ((a.bits >> i) & 1U) << (i / 2);
    if (i + 1 < degree_) odd |= ((a.bits >> (i + 1)) & 1U) << (i / 2);
  }
  return FieldElem{even} + mul(sqrt_gen_, FieldElem{odd});
}

FieldElem Field::frobenius(FieldElem a, long long k) const {
  const long long n = degree_;
  long long r = k % n;
  if (r < 0) r += n;
  if (2 * r <= n) {
    for (long long i = 0; i < r; ++i) a = sqr(a);
  } else {
    for (long long i = r; i < n; ++i) a = sqrt(a);
  }
  return a;
}

unsigned Field::trace(FieldElem a) const { return static_cast<unsigned>(std::popcount(a.bits & trace_mask_) & 1); }

std::string to_hex(std::uint64_t bits) { return to_hex128(bits); }

std::string to_hex128(unsigned __int128 bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string digits;
  do {
    digits.push_back(kDigits[static_cast<unsigned>(bits & 0xF)]);
    bits >>= 4;
  } while (bits != 0);
  std::reverse(digits.begin(), digits.end());
  return "0x" + digits;
}

unsigned __int128 parse_hex128(const std::string& text) {
  if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) {
    throw InvalidInput("expected hex literal, got '" + text + "'");
  }
  if (text.size() - 2 > 32) throw InvalidInput("hex literal too long: " + text);
  u128 value = 0;
  for (std::size_t i = 2; i < text.size(); ++i) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
    unsigned digit = 0;
    if (c >= '0' && c <= '9') {
      digit = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      digit = static_cast<unsigned>(c - 'a' + 10);
    } else {
      throw InvalidInput("bad hex digit in '" + text + "'");
    }
    value = (value << 4) | digit;
  }
  return value;
}

std::uint64_t parse_hex(const std::string& text) {
  const u128 v = parse_hex128(text);
  if (v >> 64) throw InvalidInput("hex literal exceeds 64 bits: " + text);
  return static_cast<std::uint64_t>(v);
}

namespace {

struct Echelon {
  // pivot rows keyed by their top bit
  std::array<std::uint64_t, 64> value{};
  std::array<std::uint64_t, 64> combo{};
  std::uint64_t present = 0;

  // Reduces v in place; returns the accumulated combination.
  std::uint64_t reduce(std::uint64_t& v) const {
    std::uint64_t c = 0;
    while (v != 0) {
      const int p = 63 - std::countl_zero(v);
      if (((present >> p) & 1U) == 0) break;
      v ^= value[p];
      c ^= combo[p];
    }
    return c;
  }

  void insert(std::uint64_t v, std::uint64_t c) {
    const int p = 63 - std::countl_zero(v);
    value[p] = v;
    combo[p] = c;
    present |= std::uint64_t{1} << p;
  }
};

}  // namespace

LinearSolveResult f2_linear_solve(std::span<const FieldElem> images, FieldElem target) {
  if (images.size() > 64) throw CapacityError("linear map with more than 64 inputs");
  Echelon ech;
  LinearSolveResult out;
  for (std::size_t j = 0; j < images.size(); ++j) {
    std::uint64_t v = images[j].bits;
    const std::uint64_t c = ech.reduce(v) ^ (std::uint64_t{1} << j);
    if (v == 0) {
      out.kernel.push_back(FieldElem{c});
    } else {
      ech.insert(v, c);
    }
  }
  std::uint64_t v = target.bits;
  const std::uint64_t c = ech.reduce(v);
  if (v == 0) out.solution = FieldElem{c};
  return out;
}

unsigned f2_rank(std::span<const FieldElem> vectors) {
  Echelon ech;
  unsigned rank = 0;
  for (FieldElem e : vectors) {
    std::uint64_t v = e.bits;
    ech.reduce(v);
    if (v != 0) {
      ech.insert(v, 0);
      ++rank;
    }
  }
  return rank;
}

FieldElem span_element(std::span<const FieldElem> basis, std::uint64_t coords) {
  FieldElem acc{0};
  while (coords != 0) {
    acc += basis[static_cast<std::size_t>(std::countr_zero(coords))];
    coords &= coords - 1;
  }
  return acc;
}

Embedding::Embedding(const Field& base, const Field& ext, FieldElem gen_image)
    : base_(base), ext_(ext), gen_image_(gen_image) {
  FieldElem p = ext.one();
  for (unsigned i = 0; i < base.degree(); ++i) {
    basis_images_.push_back(p);
    p = ext.mul(p, gen_image);
  }
}

Embedding Embedding::identity(const Field& f) { return Embedding(f, f, f.gen()); }

FieldElem Embedding::apply(FieldElem e) const { return span_element(basis_images_, e.bits); }

std::optional<FieldElem> Embedding::preimage(FieldElem e) const {
  return f2_linear_solve(basis_images_, e).solution;
}

Embedding embed(const Field& base, const Field& ext) {
  if (ext.degree() % base.degree() != 0) throw FieldMismatch("base degree does not divide extension degree");
  if (base == ext) return Embedding::identity(base);
  std::vector<FieldElem> coeffs(base.degree() + 1);
  const u128 mod = base.modulus();
  for (unsigned i = 0; i <= base.degree(); ++i) coeffs[i] = FieldElem{static_cast<std::uint64_t>((mod >> i) & 1U)};
  const auto roots = roots_in_field(ext, coeffs);
  if (roots.empty()) throw InternalConsistency("base modulus has no root in extension");
  return Embedding(base, ext, roots.front());
}

std::pair<Field, Embedding> extend_and_embed(const Field& base, unsigned k, unsigned max_degree) {
  if (k == 0) throw InvalidInput("extension degree must be positive");
  const unsigned long long n = static_cast<unsigned long long>(base.degree()) * k;
  if (n > max_degree || n > kWordFieldDegree) {
    throw CapacityError("extension degree " + std::to_string(n) + " exceeds limit");
  }
  Field ext = Field::make(static_cast<unsigned>(n), max_degree);
  Embedding emb = embed(base, ext);
  return {ext, emb};
}

unsigned subfield_degree(const Field& f, FieldElem e) {
  for (unsigned d = 1; d <= f.degree(); ++d) {
    if (f.degree() % d == 0 && f.frobenius(e, d) == e) return d;
  }
  return f.degree();
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over a Field, only as needed for root finding.

namespace {

using Poly = std::vector<FieldElem>;

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

// Remainder of a modulo monic-izable b.
Poly poly_mod(const Field& f, Poly a, const Poly& b) {
  trim(a);
  const int db = deg(b);
  const FieldElem lead_inv = f.inv(b.back());
  while (deg(a) >= db) {
    const int shift = deg(a) - db;
    const FieldElem q = f.mul(a.back(), lead_inv);
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(shift + i)] += f.mul(q, b[static_cast<std::size_t>(i)]);
    trim(a);
  }
  return a;
}

Poly poly_divexact(const Field& f, Poly a, const Poly& b) {
  trim(a);
  const int db = deg(b);
  const FieldElem lead_inv = f.inv(b.back());
  Poly q(static_cast<std::size_t>(std::max(0, deg(a) - db + 1)));
  while (deg(a) >= db) {
    const int shift = deg(a) - db;
    const FieldElem c = f.mul(a.back(), lead_inv);
    q[static_cast<std::size_t>(shift)] = c;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(shift + i)] += f.mul(c, b[static_cast<std::size_t>(i)]);
    trim(a);
  }
  trim(q);
  return q;
}

Poly poly_gcd(const Field& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = poly_mod(f, std::move(a), b);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const FieldElem li = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, li);
  }
  return a;
}

Poly poly_sqrmod(const Field& f, const Poly& a, const Poly& m) {
  Poly sq(a.empty() ? 0 : 2 * a.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) sq[2 * i] = f.sqr(a[i]);
  return poly_mod(f, std::move(sq), m);
}

void split_roots(const Field& f, const Poly& g, std::vector<FieldElem>& out) {
  const int d = deg(g);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(f.div(g[0], g[1]));
    return;
  }
  // Tr(delta X) mod g separates any two distinct roots for some basis delta.
  for (unsigned j = 0; j < f.degree(); ++j) {
    const FieldElem delta{std::uint64_t{1} << j};
    Poly cur = poly_mod(f, Poly{FieldElem{0}, delta}, g);
    Poly acc = cur;
    for (unsigned i = 1; i < f.degree(); ++i) {
      cur = poly_sqrmod(f, cur, g);
      if (acc.size() < cur.size()) acc.resize(cur.size());
      for (std::size_t k = 0; k < cur.size(); ++k) acc[k] += cur[k];
    }
    trim(acc);
    Poly h = poly_gcd(f, g, acc);
    if (deg(h) > 0 && deg(h) < d) {
      split_roots(f, h, out);
      split_roots(f, poly_divexact(f, g, h), out);
      return;
    }
  }
  throw InternalConsistency("root splitting failed to separate roots");
}

}  // namespace

std::vector<FieldElem> roots_in_field(const Field& f, std::vector<FieldElem> coeffs) {
  trim(coeffs);
  if (coeffs.empty()) throw InvalidInput("roots of the zero polynomial");
  for (FieldElem c : coeffs) {
    if (!f.contains(c)) throw FieldMismatch("coefficient outside field");
  }
  if (deg(coeffs) == 0) return {};

  // X^{2^N} mod f, then g = gcd(f, X^{2^N} - X) collects the distinct roots.
  Poly x_pow = poly_mod(f, Poly{FieldElem{0}, FieldElem{1}}, coeffs);
  for (unsigned i = 0; i < f.degree(); ++i) x_pow = poly_sqrmod(f, x_pow, coeffs);
  if (x_pow.size() < 2) x_pow.resize(2);
  x_pow[1] += FieldElem{1};
  trim(x_pow);
  Poly g = poly_gcd(f, coeffs, x_pow);

  std::vector<FieldElem> out;
  split_roots(f, g, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sscurve
