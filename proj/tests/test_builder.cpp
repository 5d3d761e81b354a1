#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "sscurve/builder.hpp"
#include "sscurve/decomp.hpp"
#include "sscurve/errors.hpp"
#include "sscurve/quotient.hpp"

using namespace sscurve;
using oracle::Rng;

namespace {

FieldElem apow(const Field& f, std::uint64_t e) { return f.pow(f.gen(), e); }

SparsePoly mono(const Field& f, std::uint64_t e, FieldElem c) {
  SparsePoly p(f);
  p.add_term(e, c);
  return p;
}

LinPoly lin(const Field& f, std::initializer_list<std::uint64_t> bits) {
  std::vector<FieldElem> c;
  for (auto b : bits) c.push_back(FieldElem{b});
  return LinPoly(f, c);
}

}  // namespace

TEST_CASE("build_components: worked genera") {
  const auto s30 = build_components(decompose(30));
  const Field f16 = Field::make(4);
  CHECK(s30.field == f16);
  REQUIRE(s30.components.size() == 4);
  for (unsigned j = 0; j < 4; ++j) CHECK(s30.components[j] == mono(f16, 5, apow(f16, j)));

  const auto s1 = build_components(decompose(1));
  const Field f2 = Field::make(1);
  CHECK(s1.field == f2);
  CHECK(s1.components == std::vector<SparsePoly>{mono(f2, 3, f2.one())});

  const auto s5 = build_components(decompose(5));
  CHECK(s5.field == f2);
  CHECK(s5.components == std::vector<SparsePoly>{mono(f2, 3, f2.one()), mono(f2, 5, f2.one())});
}

TEST_CASE("certificate: worked genera") {
  const auto c30 = certificate(build_components(decompose(30)));
  CHECK(c30.strata == std::vector<GenusCertificate::Entry>{{15, 2}});
  CHECK(c30.total == 30);

  const auto c1 = certificate(build_components(decompose(1)));
  CHECK(c1.strata == std::vector<GenusCertificate::Entry>{{1, 1}});
  CHECK(c1.total == 1);

  const auto c5 = certificate(build_components(decompose(5)));
  CHECK(c5.strata == std::vector<GenusCertificate::Entry>{{1, 1}, {2, 2}});
  CHECK(c5.total == 5);

  // Bookkeeping that lies about the genus is caught by the exhaustive walk.
  auto bad = build_components(decompose(5));
  bad.strata[1].u = 3;
  CHECK_THROWS_AS(certificate(bad), InternalConsistency);

  // Without strata the enumeration alone produces the multiset.
  auto bare = build_components(decompose(5));
  bare.strata.clear();
  CHECK(certificate(bare).total == 5);
}

TEST_CASE("glue_single_block") {
  const Field f16 = Field::make(4);
  const CurveSpec g30 = glue_single_block(build_components(decompose(30)));
  CHECK(format_equation(g30) == "y^16+y = a^6x^40+x^20+a^12x^10+a^9x^5");
  SparsePoly expected(f16);
  expected.add_term(40, apow(f16, 6));
  expected.add_term(20, f16.one());
  expected.add_term(10, apow(f16, 12));
  expected.add_term(5, apow(f16, 9));
  CHECK(g30.rhs() == expected);
  CHECK(format_coeff(f16, f16.pow(f16.gen(), 4)) == format_coeff(f16, f16.gen() + f16.one()));

  CHECK(format_equation(glue_single_block(build_components(decompose(1)))) == "y^2+y = x^3");

  const CurveSpec g3 = glue_single_block(build_components(decompose(3)));
  CHECK(g3.field == Field::make(2));
  CHECK(g3.n() == 2);
  const auto p3 = genus_profile(g3);
  CHECK(p3.total() == 3);
  CHECK(p3.counts == std::map<std::uint64_t, std::uint64_t>{{1, 3}});

  CHECK_THROWS_AS(glue_single_block(build_components(decompose(5))), NotDefined);
}

TEST_CASE("glued quotients are the components up to reduction") {
  for (std::uint64_t g : {3ULL, 7ULL, 14ULL, 30ULL, 12ULL}) {
    const auto spec = build_components(decompose(g));
    const CurveSpec c = glue_single_block(spec);
    const AlphaSpace a = solve_alpha_space(c);
    std::set<std::vector<std::pair<std::uint64_t, std::uint64_t>>> from_quotients;
    for (const auto& q : decomposition(c, a)) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> key;
      for (const auto& [e, v] : q.rhs.terms()) key.emplace_back(e, v.bits);
      from_quotients.insert(key);
    }
    std::set<std::vector<std::pair<std::uint64_t, std::uint64_t>>> from_components;
    const std::size_t k = spec.components.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      SparsePoly sum(a.ambient);
      for (std::size_t j = 0; j < k; ++j) {
        if ((mask >> j) & 1) sum += sparse_lift(spec.components[j], a.embedding);
      }
      std::vector<std::pair<std::uint64_t, std::uint64_t>> key;
      const SparsePoly reduced = as_reduce(sum);
      for (const auto& [e, v] : reduced.terms()) key.emplace_back(e, v.bits);
      from_components.insert(key);
    }
    CHECK(from_quotients == from_components);
  }
}

TEST_CASE("build_prime_field: worked genera") {
  const Field f2 = Field::make(1);
  const CurveSpec c221 = build_prime_field(decompose(221));
  CHECK(format_equation(c221) == "y^64+y^32+y^16+y^4+y^2+y = x^288+x^160+x^144+x^96+x^80+x^36+x^18");
  REQUIRE(c221.R.size() == 6);
  // x R_k as bit masks on the positions 2^e
  CHECK(c221.R[5] == lin(f2, {0, 1, 1, 1}));
  CHECK(c221.R[4] == lin(f2, {0, 0, 1, 1}));
  CHECK(c221.R[2] == lin(f2, {0, 0, 0, 1}));
  CHECK(c221.R[1] == lin(f2, {0, 0, 0, 1}));
  CHECK(c221.R[0].is_zero());
  CHECK(c221.R[3].is_zero());

  CHECK(format_equation(build_prime_field(decompose(1))) == "y^2+y = x^3");
  const CurveSpec c1 = build_prime_field(decompose(1));
  CHECK(c1.R == std::vector<LinPoly>{lin(f2, {0, 1})});

  const CurveSpec c30 = build_prime_field(decompose(30));
  CHECK(format_equation(c30) == "y^16+y = x^40");
  CHECK(c30.R[3] == lin(f2, {0, 0, 1}));

  const CurveSpec c5 = build_prime_field(decompose(5));
  CHECK(format_equation(c5) == "y^4+y = x^10+x^6+x^5");
  CHECK(c5.R[1] == lin(f2, {0, 1, 1}));
  CHECK(c5.R[0] == lin(f2, {0, 0, 1}));
}

TEST_CASE("recursion polynomials") {
  const auto g = recursion_polys(decompose(221));
  REQUIRE(g.size() == 4);
  const Field f2 = Field::make(1);
  CHECK(g[0] == lin(f2, {1}));
  CHECK(g[1] == lin(f2, {1, 1}));
  CHECK(g[2] == lin(f2, {1, 1, 0, 1, 1}));
  CHECK(g[3] == lin(f2, {1, 1, 1, 0, 1, 1, 1}));
}

TEST_CASE("to_standard_form") {
  const Field f16 = Field::make(4);
  const CurveSpec g30 = glue_single_block(build_components(decompose(30)));
  const auto r = to_standard_form(g30.rhs(), 4);
  REQUIRE(r.size() == 4);
  // x R_k = c x^5, so R_k = c x^4
  CHECK(r[0] == LinPoly(f16, {FieldElem{0}, FieldElem{0}, apow(f16, 9)}));
  CHECK(r[1] == LinPoly(f16, {FieldElem{0}, FieldElem{0}, apow(f16, 6)}));
  CHECK(r[2] == LinPoly(f16, {FieldElem{0}, FieldElem{0}, f16.one()}));
  CHECK(r[3] == LinPoly(f16, {FieldElem{0}, FieldElem{0}, apow(f16, 12)}));
  CHECK(f16.frobenius(apow(f16, 12), 3) == apow(f16, 6));

  const Field f2 = Field::make(1);
  CHECK(to_standard_form(mono(f2, 3, f2.one()), 1) == std::vector<LinPoly>{lin(f2, {0, 1})});
  CHECK_THROWS_AS(to_standard_form(mono(f2, 7, f2.one()), 3), NotDefined);
  CHECK_THROWS_AS(to_standard_form(mono(f2, 1, f2.one()), 3), NotDefined);
  CHECK_THROWS_AS(to_standard_form(mono(f2, 0, f2.one()), 3), NotDefined);
  CHECK_THROWS_AS(to_standard_form(mono(f2, 12, f2.one()), 2), NotDefined);  // needs R_3
  CHECK_NOTHROW(to_standard_form(mono(f2, 12, f2.one()), 3));
}

TEST_CASE("validate rejects malformed specs") {
  const Field f2 = Field::make(1);
  const Field f4 = Field::make(2);
  CHECK_THROWS_AS(validate(CurveSpec{f2, lin(f2, {1, 1}), {}}), InvalidInput);
  CHECK_THROWS_AS(validate(CurveSpec{f2, lin(f2, {1, 1}), {LinPoly(f2)}}), InvalidInput);
  CHECK_THROWS_AS(validate(CurveSpec{f2, lin(f2, {0, 1}), {lin(f2, {1})}}), InvalidInput);
  CHECK_THROWS_AS(validate(CurveSpec{f4, lin(f4, {1, 2}), {lin(f4, {1})}}), InvalidInput);
  CHECK_THROWS_AS(validate(CurveSpec{f2, lin(f2, {1, 1}), {lin(f2, {1}), lin(f2, {1})}}), InvalidInput);
  CHECK_THROWS(validate(CurveSpec{f2, lin(f2, {1, 1}), {lin(f4, {1})}}));
  CHECK_NOTHROW(validate(CurveSpec{f2, lin(f2, {1, 1}), {lin(f2, {1})}}));
}

TEST_CASE("every genus up to 4096: both constructions certify g") {
  for (std::uint64_t g = 1; g <= 4096; ++g) {
    const auto d = decompose(g);
    const auto spec = build_components(d);
    REQUIRE(spec.components.size() == d.w);
    REQUIRE(certificate(spec).total == g);

    const CurveSpec c = build_prime_field(d);
    REQUIRE(c.n() == d.w);
    for (const LinPoly& r : c.R) {
      for (FieldElem x : r.coeffs()) REQUIRE(x.bits <= 1);
    }
    const auto profile = genus_profile(c);
    REQUIRE(profile.irreducible);
    REQUIRE(profile.total() == g);
    REQUIRE(to_standard_form(c.rhs(), c.n()) == c.R);
  }
}

TEST_CASE("to_standard_form inverts rhs on random specs") {
  Rng rng(11);
  for (unsigned deg : {1U, 2U, 4U, 5U}) {
    const Field f = Field::make(deg);
    for (int i = 0; i < 40; ++i) {
      const unsigned n = 1 + rng.below(4);
      std::vector<FieldElem> s(n + 1);
      for (auto& x : s) x = rng.elem(f);
      s[0] = rng.nonzero(f);
      s[n] = f.one();
      std::vector<LinPoly> r;
      for (unsigned k = 0; k < n; ++k) {
        std::vector<FieldElem> c(1 + rng.below(5));
        for (auto& x : c) x = rng.elem(f);
        r.emplace_back(f, c);
      }
      if (std::all_of(r.begin(), r.end(), [](const LinPoly& p) { return p.is_zero(); })) continue;
      const CurveSpec c{f, LinPoly(f, s), r};
      REQUIRE(to_standard_form(c.rhs(), n) == r);
      // rhs agrees with direct evaluation of sum (x R_k)^{2^{k-1}}
      for (int t = 0; t < 5; ++t) {
        const FieldElem x = rng.elem(f);
        FieldElem direct{0};
        for (unsigned k = 0; k < n; ++k) {
          FieldElem v = oracle::schoolbook_mul(f, x, oracle::eval_lin(f, r[k], x));
          for (unsigned j = 0; j < k; ++j) v = oracle::schoolbook_mul(f, v, v);
          direct += v;
        }
        CHECK(oracle::eval_sparse(f, c.rhs(), x) == direct);
      }
    }
  }
}
