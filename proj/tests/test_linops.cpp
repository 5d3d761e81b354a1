#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "sscurve/errors.hpp"
#include "sscurve/linops.hpp"

using namespace sscurve;
using oracle::Rng;

namespace {

LinPoly f2poly(std::initializer_list<unsigned> exps) {
  const Field f = Field::make(1);
  std::vector<FieldElem> c;
  for (unsigned e : exps) {
    if (c.size() <= e) c.resize(e + 1);
    c[e] = FieldElem{1};
  }
  return LinPoly(f, c);
}

SparsePoly sparse(const Field& f, std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> terms) {
  SparsePoly p(f);
  for (auto [e, c] : terms) p.add_term(e, FieldElem{c});
  return p;
}

// Number of roots of r in F_{2^M} by enumeration.
std::uint64_t root_count(const LinPoly& r, unsigned k) {
  auto [ext, emb] = extend_and_embed(r.field(), k);
  const LinPoly lifted = lin_lift(r, emb);
  std::uint64_t n = 0;
  for (std::uint64_t x = 0; x < ext.size(); ++x) n += oracle::eval_lin(ext, lifted, FieldElem{x}).is_zero();
  return n;
}

LinPoly random_linpoly(Rng& rng, const Field& f, unsigned h, bool separable) {
  std::vector<FieldElem> c(h + 1);
  for (auto& x : c) x = rng.elem(f);
  c[h] = rng.nonzero(f);
  if (separable) c[0] = rng.nonzero(f);
  return LinPoly(f, c);
}

SparsePoly random_sparse(Rng& rng, const Field& f, unsigned terms, unsigned max_exp) {
  SparsePoly p(f);
  for (unsigned i = 0; i < terms; ++i) p.add_term(rng.below(max_exp + 1), rng.elem(f));
  return p;
}

// h^2 + h
SparsePoly wp(const SparsePoly& h) {
  const Field& f = h.field();
  SparsePoly out(f);
  for (const auto& [e1, c1] : h.terms()) {
    for (const auto& [e2, c2] : h.terms()) out.add_term(e1 + e2, f.mul(c1, c2));
  }
  out += h;
  return out;
}

}  // namespace

TEST_CASE("lin_eval") {
  CHECK(lin_eval(f2poly({0, 1}), FieldElem{1}) == FieldElem{0});
  const Field f16 = Field::make(4);
  const LinPoly x4 = LinPoly::monomial(f16, 2, f16.one());
  CHECK(lin_eval(x4, f16.gen()) == f16.gen() + f16.one());

  const LinPoly g2 = f2poly({0, 1, 3, 4});
  auto [f64, emb] = extend_and_embed(g2.field(), 6);
  const LinPoly lifted = lin_lift(g2, emb);
  for (FieldElem k : lin_kernel(g2, f64)) CHECK(lin_eval(lifted, k).is_zero());

  Rng rng(10);
  const Field f = Field::make(9);
  for (int i = 0; i < 100; ++i) {
    const LinPoly r = random_linpoly(rng, f, 1 + rng.below(5), false);
    const FieldElem x = rng.elem(f);
    const FieldElem y = rng.elem(f);
    CHECK(lin_eval(r, x + y) == lin_eval(r, x) + lin_eval(r, y));
    CHECK(lin_eval(r, x) == oracle::eval_lin(f, r, x));
  }
  CHECK_THROWS_AS(lin_eval(f2poly({0, 1}), FieldElem{2}), FieldMismatch);
}

TEST_CASE("add, compose, twist") {
  const LinPoly x2x = f2poly({0, 1});
  CHECK(lin_add(lin_twist(x2x, 3), x2x) == f2poly({0, 1, 3, 4}));
  CHECK(lin_compose(x2x, LinPoly::identity(x2x.field())) == x2x);
  CHECK(lin_compose(x2x, x2x) == f2poly({0, 2}));
  CHECK(lin_add(x2x, x2x).is_zero());
  CHECK_THROWS_AS(lin_add(x2x, LinPoly::identity(Field::make(2))), FieldMismatch);

  Rng rng(11);
  const Field f = Field::make(7);
  for (int i = 0; i < 50; ++i) {
    const LinPoly r = random_linpoly(rng, f, 1 + rng.below(4), false);
    const LinPoly s = random_linpoly(rng, f, 1 + rng.below(4), false);
    const unsigned k = rng.below(4);
    const FieldElem x = rng.elem(f);
    CHECK(lin_eval(lin_compose(r, s), x) == lin_eval(r, lin_eval(s, x)));
    CHECK(lin_eval(lin_twist(r, k), x) == f.frobenius(lin_eval(r, x), k));
    CHECK(lin_eval(lin_add(r, s), x) == lin_eval(r, x) + lin_eval(s, x));
    const FieldElem c = rng.elem(f);
    CHECK(lin_eval(lin_scale(r, c), x) == f.mul(c, lin_eval(r, x)));
  }
}

TEST_CASE("lin_kernel") {
  const Field f16 = Field::make(4);
  CHECK(lin_kernel(f2poly({0, 1}), f16) == std::vector<FieldElem>{FieldElem{1}});
  CHECK(lin_kernel(f2poly({0, 4}), f16).size() == 4);
  CHECK(lin_kernel(f2poly({0, 1, 3, 4}), Field::make(6)).size() == 4);
  CHECK_THROWS_AS(lin_kernel(LinPoly(Field::make(1)), f16), InvalidInput);

  // closure and agreement with enumeration
  Rng rng(12);
  for (unsigned n : {1U, 2U, 3U}) {
    const Field f = Field::make(n);
    for (int i = 0; i < 20; ++i) {
      const LinPoly r = random_linpoly(rng, f, 1 + rng.below(3), rng.below(2) == 0);
      auto [ext, emb] = extend_and_embed(f, 12 / n);
      const auto basis = lin_kernel(r, ext);
      std::set<std::uint64_t> span;
      for (std::uint64_t c = 0; c < (std::uint64_t{1} << basis.size()); ++c) span.insert(span_element(basis, c).bits);
      CHECK(span.size() == (std::uint64_t{1} << basis.size()));
      std::set<std::uint64_t> roots;
      const LinPoly lifted = lin_lift(r, emb);
      for (std::uint64_t x = 0; x < ext.size(); ++x) {
        if (oracle::eval_lin(ext, lifted, FieldElem{x}).is_zero()) roots.insert(x);
      }
      CHECK(span == roots);
    }
  }
}

TEST_CASE("splitting_degree against root counting") {
  CHECK(splitting_degree(f2poly({0, 1})) == 1);
  CHECK(splitting_degree(f2poly({0, 2})) == 2);
  CHECK(splitting_degree(f2poly({0, 1, 3, 4})) == 6);
  CHECK_THROWS_AS(splitting_degree(f2poly({1, 2})), InvalidInput);
  CHECK_THROWS_AS(splitting_degree(f2poly({0, 1, 3, 4}), 5), CapacityError);

  // gcd oracle for the worked example: all 16 roots in F_64 and in no smaller field
  const LinPoly g2 = f2poly({0, 1, 3, 4});
  CHECK(root_count(g2, 6) == 16);
  for (unsigned k = 1; k < 6; ++k) CHECK(root_count(g2, k) < 16);

  Rng rng(13);
  for (unsigned n : {1U, 2U, 3U}) {
    const Field f = Field::make(n);
    for (int i = 0; i < 25; ++i) {
      const unsigned h = 1 + rng.below(3);
      const LinPoly r = random_linpoly(rng, f, h, true);
      const unsigned k = splitting_degree(r);
      if (n * k <= 16) CHECK(root_count(r, k) == (std::uint64_t{1} << h));
      for (unsigned j = 1; j < k && n * j <= 16; ++j) CHECK(root_count(r, j) < (std::uint64_t{1} << h));
    }
  }
}

TEST_CASE("as_reduce") {
  const Field f2 = Field::make(1);
  CHECK(as_reduce(sparse(f2, {{6, 1}})) == sparse(f2, {{3, 1}}));

  const Field f16 = Field::make(4);
  Rng rng(14);
  for (int i = 0; i < 20; ++i) {
    const FieldElem c = rng.nonzero(f16);
    for (unsigned e = 1; e <= 4; ++e) {
      const std::uint64_t d = (std::uint64_t{1} << e) + 1;
      SparsePoly sq(f16);
      sq.add_term(2 * d, f16.sqr(c));
      SparsePoly expect(f16);
      expect.add_term(d, c);
      CHECK(as_reduce(sq) == expect);
    }
  }

  // the glued genus-30 right side collapses onto x^5
  const FieldElem a = f16.gen();
  SparsePoly t(f16);
  t.add_term(40, f16.pow(a, std::uint64_t{6}));
  t.add_term(20, f16.one());
  t.add_term(10, f16.pow(a, std::uint64_t{12}));
  t.add_term(5, f16.pow(a, std::uint64_t{9}));
  const SparsePoly r = as_reduce(t);
  REQUIRE(r.terms().size() == 1);
  CHECK(r.terms().begin()->first == 5);
  const FieldElem expected = f16.pow(a, std::uint64_t{9}) + f16.sqrt(f16.pow(a, std::uint64_t{12})) +
                             f16.frobenius(f16.one(), -2) + f16.frobenius(f16.pow(a, std::uint64_t{6}), -3);
  CHECK(r.terms().begin()->second == expected);

  // idempotent, odd exponents, invariant under adding h^2 + h
  for (unsigned n : {1U, 2U, 5U}) {
    const Field f = Field::make(n);
    for (int i = 0; i < 50; ++i) {
      const SparsePoly p = random_sparse(rng, f, 1 + rng.below(6), 80);
      const SparsePoly red = as_reduce(p);
      CHECK(as_reduce(red) == red);
      for (const auto& [e, c] : red.terms()) CHECK((e % 2 == 1 || e == 0));
      SparsePoly shifted = p;
      shifted += wp(random_sparse(rng, f, 1 + rng.below(3), 30));
      const SparsePoly red2 = as_reduce(shifted);
      // constants may differ by a trace-zero element
      SparsePoly d1 = red;
      SparsePoly d2 = red2;
      const FieldElem c1 = d1.coeff(0);
      const FieldElem c2 = d2.coeff(0);
      d1.add_term(0, c1);
      d2.add_term(0, c2);
      CHECK(d1 == d2);
      CHECK(f.trace(c1 + c2) == 0);
    }
  }
}

TEST_CASE("as_genus") {
  const Field f2 = Field::make(1);
  CHECK(as_genus(sparse(f2, {{3, 1}})) == 1);
  CHECK(as_genus(sparse(f2, {{5, 1}})) == 2);
  CHECK(as_genus(sparse(f2, {{6, 1}})) == 1);
  CHECK(as_genus(sparse(f2, {{1, 1}})) == 0);
  CHECK_THROWS_AS(as_genus(sparse(f2, {{2, 1}, {1, 1}})), ReducibleCover);

  Rng rng(15);
  for (unsigned n : {1U, 3U}) {
    const Field f = Field::make(n);
    for (int i = 0; i < 50; ++i) {
      SparsePoly p = random_sparse(rng, f, 1 + rng.below(5), 60);
      p.add_term(61, f.one());
      const std::uint64_t g = as_genus(p);
      CHECK(g == 30);
      SparsePoly sq(f);
      for (const auto& [e, c] : p.terms()) sq.add_term(2 * e, f.sqr(c));
      CHECK(as_genus(sq) == g);
      SparsePoly moved = p;
      moved += wp(random_sparse(rng, f, 2, 25));
      CHECK(as_genus(moved) == g);
    }
  }
}

TEST_CASE("x R(x) has genus 2^{h-1} for every R of 2-degree h <= 3 over F_2 and F_4") {
  for (unsigned n : {1U, 2U}) {
    const Field f = Field::make(n);
    const std::uint64_t q = f.size();
    for (unsigned h = 1; h <= 3; ++h) {
      std::uint64_t total = 1;
      for (unsigned i = 0; i <= h; ++i) total *= q;
      for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<FieldElem> c(h + 1);
        std::uint64_t rest = code;
        for (auto& x : c) {
          x = FieldElem{rest % q};
          rest /= q;
        }
        if (c[h].is_zero()) continue;
        CHECK(as_genus(times_x(LinPoly(f, c))) == (std::uint64_t{1} << (h - 1)));
      }
    }
  }
}

TEST_CASE("formatting") {
  const Field f16 = Field::make(4);
  SparsePoly t(f16);
  t.add_term(40, f16.pow(f16.gen(), std::uint64_t{6}));
  t.add_term(20, f16.one());
  t.add_term(10, f16.pow(f16.gen(), std::uint64_t{12}));
  t.add_term(5, f16.pow(f16.gen(), std::uint64_t{9}));
  CHECK(format_sparse(t) == "a^6x^40+x^20+a^12x^10+a^9x^5");
  CHECK(format_linpoly(f2poly({0, 1, 2, 4, 5, 6})) == "y^64+y^32+y^16+y^4+y^2+y");
  CHECK(format_sparse(SparsePoly(f16)) == "0");
  SparsePoly c(f16);
  c.add_term(0, f16.gen());
  c.add_term(1, f16.one());
  CHECK(format_sparse(c) == "x+a");
  CHECK(format_coeff(Field::make(20), FieldElem{5}) == "[0x5]");
}
