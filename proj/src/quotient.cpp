#include "sscurve/quotient.hpp"

#include <bit>

#include "sscurve/errors.hpp"

namespace sscurve {

namespace {

std::vector<LinPoly> lifted_r(const CurveSpec& c, const Embedding& emb) {
  std::vector<LinPoly> out;
  out.reserve(c.R.size());
  for (const LinPoly& r : c.R) out.push_back(lin_lift(r, emb));
  return out;
}

void require_in_space(const CurveSpec& c, const AlphaSpace& a, FieldElem alpha) {
  if (alpha.is_zero()) throw InvalidInput("alpha must be nonzero");
  if (!a.ambient.contains(alpha)) throw FieldMismatch("alpha outside the ambient field");
  const LinPoly eq = lin_lift(alpha_equation(c), a.embedding);
  if (!lin_eval(eq, alpha).is_zero()) throw InvalidInput("alpha does not solve the alpha equation");
}

// sum_k alpha^{2^{shift-k}} x R_k(x), reduced.
SparsePoly weighted_sum(const CurveSpec& c, const AlphaSpace& a, FieldElem alpha, long long shift) {
  const Field& f = a.ambient;
  SparsePoly acc(f);
  const auto rs = lifted_r(c, a.embedding);
  for (std::size_t k = 1; k <= rs.size(); ++k) {
    const FieldElem w = f.frobenius(alpha, shift - static_cast<long long>(k));
    acc += times_x(lin_scale(rs[k - 1], w));
  }
  return as_reduce(acc);
}

// ---- F_2[t] arithmetic for the module route (degrees < 64) ----

int bdeg(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t bmod(unsigned __int128 a, std::uint64_t p) {
  const int dp = bdeg(p);
  for (;;) {
    const auto hi = static_cast<std::uint64_t>(a >> 64);
    const int da = hi != 0 ? 127 - std::countl_zero(hi) : bdeg(static_cast<std::uint64_t>(a));
    if (da < dp) return static_cast<std::uint64_t>(a);
    a ^= static_cast<unsigned __int128>(p) << (da - dp);
  }
}

std::uint64_t bmulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return bmod(clmul(a, b), p); }

}  // namespace

LinPoly alpha_equation(const CurveSpec& c) {
  const Field& f = c.field;
  const unsigned n = c.n();
  std::vector<FieldElem> coeffs(n + 1);
  coeffs[0] = f.one();
  for (unsigned i = 0; i < n; ++i) coeffs[n - i] = f.frobenius(c.S.coeff(i), static_cast<long long>(n - 1 - i));
  return LinPoly(f, std::move(coeffs));
}

AlphaSpace solve_alpha_space(const CurveSpec& c, unsigned max_degree) {
  validate(c);
  const LinPoly eq = alpha_equation(c);
  const unsigned k = splitting_degree(eq, max_degree);
  auto [ambient, emb] = extend_and_embed(c.field, k, max_degree);
  AlphaSpace a{ambient, emb, lin_kernel(lin_lift(eq, emb), ambient)};
  if (a.dim() != c.n()) throw InternalConsistency("alpha space has the wrong dimension");
  return a;
}

SplitData split(const LinPoly& s, FieldElem beta) {
  const Field& f = s.field();
  if (beta.is_zero()) throw InvalidInput("beta must be nonzero");
  if (!f.contains(beta)) throw FieldMismatch("beta outside the field of S");
  if (s.degree() < 1 || s.coeffs().back() != f.one()) throw InvalidInput("S must be monic of 2-degree >= 1");
  const auto n = static_cast<std::size_t>(s.degree());
  const FieldElem beta_inv = f.inv(beta);

  std::vector<FieldElem> b(n);
  b[n - 1] = f.one();
  // beta B_0 = A_0;  B_{i-1}^2 + beta B_i = A_i  (i = 1..n-2);  B_{n-2}^2 + beta = A_{n-1}
  FieldElem last;
  if (n == 1) {
    last = beta;
  } else {
    b[0] = f.mul(s.coeff(0), beta_inv);
    for (std::size_t i = 1; i + 1 < n; ++i) b[i] = f.mul(s.coeff(i) + f.sqr(b[i - 1]), beta_inv);
    last = f.sqr(b[n - 2]) + beta;
  }
  if (last != s.coeff(n - 1)) throw BetaNotAdmissible("beta fails the compatibility equation");
  return SplitData{LinPoly(f, std::move(b)), beta};
}

QuotientCurve quotient_curve(const CurveSpec& c, const AlphaSpace& a, FieldElem alpha) {
  require_in_space(c, a, alpha);
  const Field& f = a.ambient;
  SparsePoly scaled(f);
  const FieldElem alpha_sq = f.sqr(alpha);
  const SparsePoly t = c.rhs();
  for (const auto& [e, coeff] : t.terms()) scaled.add_term(e, f.mul(alpha_sq, a.embedding.apply(coeff)));
  QuotientCurve q{alpha, as_reduce(scaled), 0};
  if (q.rhs.is_zero()) throw ReducibleCover("quotient right side lies in wp(F[x])");
  q.genus = as_genus(q.rhs);
  return q;
}

SparsePoly quotient_rhs_lowered(const CurveSpec& c, const AlphaSpace& a, FieldElem alpha) {
  require_in_space(c, a, alpha);
  return weighted_sum(c, a, alpha, 2);
}

SparsePoly quotient_rhs_raised(const CurveSpec& c, const AlphaSpace& a, FieldElem alpha) {
  require_in_space(c, a, alpha);
  return weighted_sum(c, a, alpha, static_cast<long long>(c.n()));
}

std::vector<QuotientCurve> decomposition(const CurveSpec& c, const AlphaSpace& a) {
  if (a.dim() >= 32) throw CapacityError("alpha space too large to enumerate");
  const std::uint64_t count = (std::uint64_t{1} << a.dim()) - 1;
  std::vector<std::optional<QuotientCurve>> slots(count);
  bool reducible = false;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    try {
      slots[static_cast<std::size_t>(i)] = quotient_curve(c, a, a.element(static_cast<std::uint64_t>(i) + 1));
    } catch (const ReducibleCover&) {
#pragma omp atomic write
      reducible = true;
    }
  }
  if (reducible) throw ReducibleCover("curve is reducible: some quotient is trivial");
  std::vector<QuotientCurve> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<QuotientCurve> decomposition(const CurveSpec& c, unsigned max_degree) {
  return decomposition(c, solve_alpha_space(c, max_degree));
}

std::uint64_t GenusProfile::total() const {
  std::uint64_t t = 0;
  for (const auto& [g, n] : counts) t += g * n;
  return t;
}

GenusProfile frobenius_module_profile(const CurveSpec& c, unsigned max_dim) {
  validate(c);
  if (c.field.degree() != 1) throw NotDefined("module route needs a curve over F_2");
  const unsigned n = c.n();
  if (n > max_dim || n >= 63) throw CapacityError("alpha space too large to enumerate");

  std::uint64_t p = 0;  // conventional associate of the alpha equation
  const LinPoly eq = alpha_equation(c);
  for (std::size_t i = 0; i < eq.coeffs().size(); ++i) {
    if (!eq.coeffs()[i].is_zero()) p |= std::uint64_t{1} << i;
  }

  // q_e(t) = sum_{k : R_k has x^{2^e}} t^{n+2-k}: alpha^{2^{2-k}} <-> t^{2-k} a(t),
  // shifted by the unit t^n.
  std::map<unsigned, std::uint64_t> q;
  for (unsigned k = 1; k <= n; ++k) {
    const auto& coeffs = c.R[k - 1].coeffs();
    for (unsigned e = 0; e < coeffs.size(); ++e) {
      if (coeffs[e].is_zero()) continue;
      std::uint64_t tp = 1;
      for (unsigned s = 0; s < n + 2 - k; ++s) tp = bmulmod(tp, 2, p);
      q[e] ^= tp;
    }
  }

  GenusProfile prof;
  prof.route = "frobenius-module";
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t a = 1; a < count; ++a) {
    int top = -1;
    for (auto it = q.rbegin(); it != q.rend(); ++it) {
      if (bmulmod(it->second, a, p) != 0) {
        top = static_cast<int>(it->first);
        break;
      }
    }
    if (top < 0) {
      prof.irreducible = false;
      continue;
    }
    ++prof.counts[top == 0 ? 0 : std::uint64_t{1} << (top - 1)];
  }
  return prof;
}

GenusProfile genus_profile(const CurveSpec& c, unsigned max_degree) {
  try {
    const AlphaSpace a = solve_alpha_space(c, max_degree);
    if (a.dim() > 24) throw CapacityError("alpha space too large to enumerate");
    GenusProfile prof;
    prof.route = "explicit";
    try {
      for (const QuotientCurve& q : decomposition(c, a)) ++prof.counts[q.genus];
    } catch (const ReducibleCover&) {
      prof.irreducible = false;
      prof.counts.clear();
    }
    return prof;
  } catch (const CapacityError&) {
    if (c.field.degree() != 1) throw;
    return frobenius_module_profile(c);
  }
}

bool is_irreducible(const CurveSpec& c, unsigned max_degree) { return genus_profile(c, max_degree).irreducible; }

GenusCertificate quotient_certificate(const CurveSpec& c, unsigned max_degree) {
  const GenusProfile prof = genus_profile(c, max_degree);
  if (!prof.irreducible) throw ReducibleCover("curve is reducible");
  GenusCertificate cert;
  for (const auto& [g, n] : prof.counts) cert.strata.push_back({n, g});
  cert.total = prof.total();
  return cert;
}

}  // namespace sscurve
