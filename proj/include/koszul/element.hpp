#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "koszul/context.hpp"
#include "koszul/rational.hpp"

namespace koszul {

/// Canonical monomial: factors sorted ascending by generator index, each
/// exponent >= 1, odd generators with exponent exactly 1.
struct Monomial {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;

  bool is_constant() const { return factors.empty(); }
  int degree(const Context& ctx) const;
  std::pair<int, int> bidegree(const Context& ctx) const;
  int exponent_of(std::uint32_t index) const;
  int exponent_sum(const std::vector<char>& mask) const;

  auto operator<=>(const Monomial&) const = default;
};

/// Koszul-normalizes an arbitrary factor sequence. Returns sign in {-1,0,+1}
/// and the canonical monomial; sign 0 exactly when an odd generator repeats
/// (in which case no monomial is returned).
std::pair<int, std::optional<Monomial>> normalize_monomial(
    const Context& ctx,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& factors);

/// Product of two canonical monomials: merged monomial and Koszul sign
/// (0 when an odd generator collides).
std::pair<int, Monomial> monomial_product(const Context& ctx,
                                          const Monomial& a,
                                          const Monomial& b);

/// Sparse element of the free graded-commutative algebra of one Context.
/// Terms map canonical monomials to nonzero rational coefficients. The
/// `truncated` flag records that some operation dropped terms beyond the
/// context's truncation bound, so downstream consumers can mark results
/// provisional.
class Element {
 public:
  Element() = default;
  explicit Element(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static Element zero(ContextPtr ctx) { return Element(std::move(ctx)); }
  static Element constant(ContextPtr ctx, const Rational& c);
  static Element generator(ContextPtr ctx, std::size_t index);
  static Element generator(ContextPtr ctx, const std::string& name);
  static Element monomial(ContextPtr ctx, const Monomial& m,
                          const Rational& c = 1);

  const ContextPtr& context() const { return ctx_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool truncated() const { return truncated_; }
  void mark_truncated() { truncated_ = true; }

  /// Adds c * m, enforcing canonical-form invariants (drops to zero if the
  /// monomial exceeds the truncation bound, setting the truncated flag).
  void add_term(const Monomial& m, const Rational& c);

  Element& operator+=(const Element& rhs);
  Element& operator-=(const Element& rhs);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  Element operator-() const;

  friend Element operator*(const Rational& c, Element e);
  friend Element operator*(Element e, const Rational& c) { return c * e; }
  friend Element operator*(const Element& a, const Element& b);

  bool operator==(const Element& rhs) const;

  /// Degree when all terms agree, nullopt otherwise. The zero element is
  /// homogeneous of every degree; by convention returns nullopt.
  std::optional<int> degree() const;
  std::optional<std::pair<int, int>> bidegree() const;

  /// Partition of the terms by bidegree; summing the parts reproduces *this.
  std::map<std::pair<int, int>, Element> bidegree_components() const;

  Rational coefficient(const Monomial& m) const;

  std::string to_string() const;

 private:
  void require_same_context(const Element& other) const;
  ContextPtr ctx_;
  std::map<Monomial, Rational> terms_;
  bool truncated_ = false;
};

/// True if the monomial fits under the context's truncation bound.
bool within_truncation(const Context& ctx, const Monomial& m);

}  // namespace koszul
