#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace koszul;
using namespace koszul::testing;

namespace {

ContextPtr weil1() {
  // th odd deg 1, dth even deg 2 (one-generator Weil-type table)
  return Context::make({{"th", 1, 1, 0}, {"dth", 2, 1, 1}});
}

ContextPtr two_odd() {
  return Context::make({{"x", 0, 0, 0}, {"t1", 1, 1, 0}, {"t2", 1, 1, 0}});
}

}  // namespace

TEST_CASE("normalize_monomial: odd transposition sign") {
  auto ctx = two_odd();
  auto [sign, m] = normalize_monomial(*ctx, {{2, 1}, {1, 1}});  // t2 * t1
  CHECK(sign == -1);
  REQUIRE(m.has_value());
  CHECK(m->factors ==
        decltype(m->factors){{1u, 1u}, {2u, 1u}});  // canonical t1*t2
}

TEST_CASE("normalize_monomial: odd square vanishes") {
  auto ctx = two_odd();
  auto [sign, m] = normalize_monomial(*ctx, {{1, 1}, {1, 1}});
  CHECK(sign == 0);
  CHECK(!m.has_value());
  auto [sign2, m2] = normalize_monomial(*ctx, {{1, 2}});
  CHECK(sign2 == 0);
  CHECK(!m2.has_value());
}

TEST_CASE("normalize_monomial: even factor commutes freely") {
  auto ctx = two_odd();
  auto [sign, m] = normalize_monomial(*ctx, {{1, 1}, {0, 1}});  // t1 * x
  CHECK(sign == 1);
  REQUIRE(m.has_value());
  CHECK(m->factors == decltype(m->factors){{0u, 1u}, {1u, 1u}});
}

TEST_CASE("normalize_monomial idempotent with sign +1 on its own output") {
  auto ctx = sandbox();
  std::mt19937 rng(7);
  for (int k = 0; k < 50; ++k) {
    Element e = random_monomial_element(ctx, rng);
    if (e.is_zero()) continue;
    const Monomial& m = e.terms().begin()->first;
    auto [sign, again] = normalize_monomial(*ctx, m.factors);
    CHECK(sign == 1);
    REQUIRE(again.has_value());
    CHECK(*again == m);
  }
}

TEST_CASE("multiply: anticommutativity of odd generators") {
  auto ctx = two_odd();
  Element t1 = Element::generator(ctx, "t1");
  Element t2 = Element::generator(ctx, "t2");
  Element t1t2 = t1 * t2;
  CHECK(t2 * t1 == -t1t2);
  CHECK((t1 * t1).is_zero());
}

TEST_CASE("multiply: even generator squares freely") {
  auto ctx = weil1();
  Element dth = Element::generator(ctx, "dth");
  Element sq = dth * dth;
  Monomial m;
  m.factors = {{1u, 2u}};
  CHECK(sq == Element::monomial(ctx, m));
}

TEST_CASE("multiply: bilinearity over Q") {
  auto ctx = two_odd();
  Element x = Element::generator(ctx, "x");
  Element t1 = Element::generator(ctx, "t1");
  Element t2 = Element::generator(ctx, "t2");
  Element lhs = (Rational(2, 3) * x + t1 * t2) * (Rational(3) * x);
  Monomial x2;
  x2.factors = {{0u, 2u}};
  Element expect = Element::monomial(ctx, x2, 2);
  expect += Rational(3) * (x * t1 * t2);
  CHECK(lhs == expect);
}

TEST_CASE("graded commutativity on random homogeneous elements") {
  auto ctx = sandbox();
  std::mt19937 rng(11);
  for (int k = 0; k < 40; ++k) {
    Element a = random_homogeneous(ctx, rng);
    Element b = random_homogeneous(ctx, rng);
    if (a.is_zero() || b.is_zero()) continue;
    int sgn = sign_pow(static_cast<long>(*a.degree()) * *b.degree());
    CHECK(a * b == Rational(sgn) * (b * a));
  }
}

TEST_CASE("associativity on random triples") {
  auto ctx = sandbox();
  std::mt19937 rng(13);
  for (int k = 0; k < 30; ++k) {
    Element a = random_monomial_element(ctx, rng) +
                random_monomial_element(ctx, rng);
    Element b = random_monomial_element(ctx, rng);
    Element c = random_monomial_element(ctx, rng) +
                random_monomial_element(ctx, rng);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("bidegree components") {
  auto w = Context::make({{"t1", 1, 1, 0},
                          {"t2", 1, 1, 0},
                          {"dt1", 2, 1, 1},
                          {"dt2", 2, 1, 1}});
  Element t1 = Element::generator(w, "t1");
  Element dt2 = Element::generator(w, "dt2");
  auto parts = (t1 * dt2).bidegree_components();
  REQUIRE(parts.size() == 1);
  CHECK(parts.begin()->first == std::make_pair(2, 1));

  Element mix = t1 + Element::generator(w, "dt1");
  auto parts2 = mix.bidegree_components();
  REQUIRE(parts2.size() == 2);
  CHECK(parts2.count({1, 0}) == 1);
  CHECK(parts2.count({1, 1}) == 1);
  CHECK(parts2.at({1, 0}) == t1);

  Element five = Element::constant(w, 5);
  auto parts3 = five.bidegree_components();
  REQUIRE(parts3.size() == 1);
  CHECK(parts3.begin()->first == std::make_pair(0, 0));
  // summing components reproduces the element
  Element sum(w);
  for (auto& [pq, part] : parts2) sum += part;
  CHECK(sum == mix);
}

TEST_CASE("truncation drops terms and flags the result") {
  auto ctx = Context::make({{"x", 0, 0, 0}, {"t", 1, 1, 0}},
                           Truncation{{0}, 2});
  Element x = Element::generator(ctx, "x");
  Element x2 = x * x;
  CHECK(!x2.truncated());
  Element x3 = x2 * x;
  CHECK(x3.is_zero());
  CHECK(x3.truncated());
  // the flag propagates through sums
  Element s = x3 + Element::generator(ctx, "t");
  CHECK(s.truncated());
}

TEST_CASE("homogeneous degree queries") {
  auto ctx = sandbox();
  Element s = Element::generator(ctx, "s");
  Element u = Element::generator(ctx, "u");
  CHECK(*(s * Element::generator(ctx, "t")).degree() == 2);
  CHECK(!(s + u).degree().has_value());
  CHECK(*(s * Element::generator(ctx, "v")).degree() == 0);
}

TEST_CASE("rational parsing") {
  CHECK(*parse_rational("3/6") == Rational(1, 2));
  CHECK(*parse_rational("-7") == Rational(-7));
  CHECK(*parse_rational("+2/4") == Rational(1, 2));
  CHECK(!parse_rational("1/0").has_value());
  CHECK(!parse_rational("a/2").has_value());
  CHECK(!parse_rational("").has_value());
  CHECK(!parse_rational("1/-2").has_value());
}

TEST_CASE("context rejects bad tables") {
  CHECK_THROWS_AS(Context::make({{"a", 1, 0, 0}}), spec_error);
  CHECK_THROWS_AS(Context::make({{"a", 0, 0, 0}, {"a", 0, 0, 0}}), spec_error);
  CHECK_THROWS_AS(
      Context::make({{"a", 0, 0, 0}}, Truncation{{3}, 2}), spec_error);
}

TEST_CASE("context mismatch is detected") {
  auto c1 = two_odd();
  auto c2 = two_odd();  // distinct instance
  Element a = Element::generator(c1, "t1");
  Element b = Element::generator(c2, "t1");
  CHECK_THROWS_AS(a * b, context_mismatch);
  Element aa = a;
  CHECK_THROWS_AS(aa += b, context_mismatch);
}
