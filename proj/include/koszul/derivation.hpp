#pragma once

#include <optional>
#include <vector>

#include "koszul/element.hpp"

namespace koszul {

/// A graded derivation of a Context's algebra, stored by its degree and its
/// images on every generator and extended everywhere else by the graded
/// Leibniz rule
///   D(ab) = D(a) b + (-1)^{|D||a|} a D(b).
/// Equality of derivations is equality of all generator images.
class Derivation {
 public:
  Derivation() = default;
  Derivation(ContextPtr ctx, int degree);
  Derivation(ContextPtr ctx, int degree, std::vector<Element> images);

  static Derivation zero(ContextPtr ctx, int degree) {
    return Derivation(std::move(ctx), degree);
  }
  /// Left partial derivative with respect to generator i; degree -|g_i|.
  static Derivation partial(ContextPtr ctx, std::size_t i);
  /// Diagonal derivation g_i -> w_i * g_i (degree 0).
  static Derivation diagonal(ContextPtr ctx, std::vector<Rational> weights);
  /// Degree-weighted Euler derivation g -> |g| * g.
  static Derivation euler(ContextPtr ctx);
  /// Exponent-counting derivation over a subset: g -> g on the subset, 0 off
  /// it; multiplies a monomial by its total exponent in the subset.
  static Derivation exponent_euler(ContextPtr ctx,
                                   const std::vector<std::size_t>& subset);

  const ContextPtr& context() const { return ctx_; }
  int degree() const { return degree_; }
  const Element& image(std::size_t i) const { return images_[i]; }
  void set_image(std::size_t i, Element e);
  bool is_zero() const;

  Element apply(const Element& e) const;
  Element operator()(const Element& e) const { return apply(e); }

  /// Left multiplication by an element: (f D)(x) = f * D(x), again a
  /// derivation, of degree |f| + |D|.
  Derivation scaled_by(const Element& f) const;

  Derivation& operator+=(const Derivation& rhs);
  Derivation& operator-=(const Derivation& rhs);
  friend Derivation operator+(Derivation a, const Derivation& b) {
    return a += b;
  }
  friend Derivation operator-(Derivation a, const Derivation& b) {
    return a -= b;
  }
  Derivation operator-() const;
  friend Derivation operator*(const Rational& c, Derivation d);

  bool operator==(const Derivation& rhs) const;

  /// Common (p,q)-offset of all generator images, when homogeneous.
  std::optional<std::pair<int, int>> bidegree() const;

 private:
  ContextPtr ctx_;
  int degree_ = 0;
  std::vector<Element> images_;
};

/// Graded commutator [D1,D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1, evaluated on
/// generators.
Derivation commutator(const Derivation& d1, const Derivation& d2);

/// For odd-degree D: whether D^2 = 0 as an operator (checked on generators).
bool is_homological(const Derivation& d);

/// Terms ad_N^k(D)/k! until the first zero term; throws nilpotency_error if
/// the bound is exceeded. Requires |N| = 0.
std::vector<Derivation> exp_conjugate_series(const Derivation& n,
                                             const Derivation& d,
                                             std::size_t bound);

/// Ad_{exp N}(D) = sum ad_N^k(D)/k!. Default bound: #generators + 2.
Derivation exp_conjugate(const Derivation& n, const Derivation& d,
                         std::optional<std::size_t> bound = std::nullopt);

/// exp(N) applied to an element: sum N^k(e)/k!; an algebra automorphism.
Element exp_apply(const Derivation& n, const Element& e,
                  std::optional<std::size_t> bound = std::nullopt);

/// Algebra endomorphism given by generator images (applied to a whole
/// element). Images must live in `target`.
Element substitute(const Element& e, const std::vector<Element>& images,
                   const ContextPtr& target);

/// Conjugate D by the algebra automorphism phi: returns phi^{-1} o D o phi,
/// where phi and phi_inverse are given by generator images.
Derivation conjugate_derivation(const Derivation& d,
                                const std::vector<Element>& phi,
                                const std::vector<Element>& phi_inverse);

}  // namespace koszul
