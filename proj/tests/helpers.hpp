#pragma once

#include <random>
#include <vector>

#include "koszul/algebroid.hpp"
#include "koszul/derivation.hpp"

namespace koszul::testing {

// Mixed-parity sandbox context: x even deg 0 (truncated), s odd deg 1,
// t odd deg 1, u even deg 2, v odd deg -1.
inline ContextPtr sandbox() {
  return Context::make(
      {{"x", 0, 0, 0},
       {"s", 1, 1, 0},
       {"t", 1, 1, 0},
       {"u", 2, 1, 1},
       {"v", -1, 0, -1}},
      Truncation{{0}, 6});
}

inline Element random_monomial_element(const ContextPtr& ctx,
                                       std::mt19937& rng, int max_exp = 2) {
  std::uniform_int_distribution<int> exp_dist(0, max_exp);
  std::uniform_int_distribution<long> coeff_dist(-4, 4);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;
  for (std::size_t i = 0; i < ctx->size(); ++i) {
    int e = exp_dist(rng);
    if (ctx->gen(i).odd()) e = e % 2;
    if (e > 0)
      factors.emplace_back(static_cast<std::uint32_t>(i),
                           static_cast<std::uint32_t>(e));
  }
  auto [sign, m] = normalize_monomial(*ctx, factors);
  Element out(ctx);
  long c = coeff_dist(rng);
  if (sign != 0 && c != 0) out.add_term(*m, Rational(c * sign));
  return out;
}

// Random homogeneous element: sum of random monomials sharing the degree of
// the first nonzero pick.
inline Element random_homogeneous(const ContextPtr& ctx, std::mt19937& rng,
                                  int terms = 3) {
  Element out(ctx);
  std::optional<int> deg;
  for (int k = 0; k < terms * 4 && terms > 0; ++k) {
    Element m = random_monomial_element(ctx, rng);
    if (m.is_zero()) continue;
    int d = *m.degree();
    if (!deg) deg = d;
    if (d == *deg) {
      out += m;
      --terms;
    }
  }
  return out;
}

// Random derivation of the given degree with homogeneous images.
inline Derivation random_derivation(const ContextPtr& ctx, std::mt19937& rng,
                                    int degree) {
  Derivation d(ctx, degree);
  for (std::size_t i = 0; i < ctx->size(); ++i) {
    int want = ctx->gen(i).degree + degree;
    Element img(ctx);
    for (int tries = 0; tries < 30; ++tries) {
      Element m = random_monomial_element(ctx, rng);
      if (!m.is_zero() && *m.degree() == want) img += m;
    }
    if (!img.is_zero()) d.set_image(i, img);
  }
  return d;
}

inline AlgebroidSpec sl2() {
  // [h,e] = 2e, [h,f] = -2f, [e,f] = h
  std::vector<std::vector<std::vector<Rational>>> c(
      3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, 0)));
  const int E = 0, F = 1, H = 2;
  c[H][E][E] = 2;
  c[E][H][E] = -2;
  c[H][F][F] = -2;
  c[F][H][F] = 2;
  c[E][F][H] = 1;
  c[F][E][H] = -1;
  return AlgebroidSpec::lie_algebra({"e", "f", "h"}, {0, 0, 0}, c);
}

inline AlgebroidSpec so3() {
  // [e1,e2] = e3 and cyclic
  std::vector<std::vector<std::vector<Rational>>> c(
      3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, 0)));
  c[0][1][2] = 1;
  c[1][0][2] = -1;
  c[1][2][0] = 1;
  c[2][1][0] = -1;
  c[2][0][1] = 1;
  c[0][2][1] = -1;
  return AlgebroidSpec::lie_algebra({"e1", "e2", "e3"}, {0, 0, 0}, c);
}

inline AlgebroidSpec nonabelian2() {
  // [e1,e2] = e2
  std::vector<std::vector<std::vector<Rational>>> c(
      2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2, 0)));
  c[0][1][1] = 1;
  c[1][0][1] = -1;
  return AlgebroidSpec::lie_algebra({"e1", "e2"}, {0, 0}, c);
}

inline AlgebroidSpec heisenberg3() {
  // [e1,e2] = e3 central
  std::vector<std::vector<std::vector<Rational>>> c(
      3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, 0)));
  c[0][1][2] = 1;
  c[1][0][2] = -1;
  return AlgebroidSpec::lie_algebra({"e1", "e2", "e3"}, {0, 0, 0}, c);
}

// Independent Jacobiator oracle on constant structure data: the cyclic sum
// [[a,b],c] + [[b,c],a] + [[c,a],b] expanded through the constants.
inline bool jacobi_holds(const AlgebroidSpec& spec) {
  const std::size_t n = spec.frame_count();
  auto cval = [&](std::size_t a, std::size_t b, std::size_t g) {
    const Element& e = spec.structure(a, b, g);
    return e.is_zero() ? Rational(0) : e.terms().begin()->second;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t m = 0; m < n; ++m) {
          Rational acc(0);
          for (std::size_t k = 0; k < n; ++k) {
            acc += cval(a, b, k) * cval(k, c, m);
            acc += cval(b, c, k) * cval(k, a, m);
            acc += cval(c, a, k) * cval(k, b, m);
          }
          if (!is_zero(acc)) return false;
        }
  return true;
}

}  // namespace koszul::testing
