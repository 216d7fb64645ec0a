#pragma once

#include <string>
#include <vector>

#include "koszul/derivation.hpp"

namespace koszul {

/// One frame element of an algebroid: a label (its dual fibre coordinate is
/// named label + "'") and its degree.
struct FrameInfo {
  std::string label;
  int degree = 0;
};

/// Structure data for an algebroid over a polynomial base: a frame, anchor
/// derivations on the base (one per frame element), and structure functions
/// c_{ab}^g as base elements, graded-antisymmetric in (a,b).
class AlgebroidSpec {
 public:
  AlgebroidSpec(ContextPtr base, std::vector<FrameInfo> frames);

  const ContextPtr& base() const { return base_; }
  const std::vector<FrameInfo>& frames() const { return frames_; }
  std::size_t frame_count() const { return frames_.size(); }

  void set_anchor(std::size_t a, Derivation rho);
  void set_structure(std::size_t a, std::size_t b, std::size_t g, Element c);
  /// Sets c_{ab}^g and the graded-antisymmetric mirror c_{ba}^g at once.
  void set_bracket(std::size_t a, std::size_t b, std::size_t g,
                   const Element& c);

  const Derivation& anchor(std::size_t a) const { return anchors_[a]; }
  const Element& structure(std::size_t a, std::size_t b, std::size_t g) const;

  /// Degree consistency and graded antisymmetry of the structure functions;
  /// throws spec_error on the first violation.
  void validate() const;

  /// Point-base Lie (super)algebra from constant structure data.
  static AlgebroidSpec lie_algebra(
      const std::vector<std::string>& labels, const std::vector<int>& degrees,
      const std::vector<std::vector<std::vector<Rational>>>& c);

  /// Action algebroid base x g with anchor a_i and the constants of g.
  static AlgebroidSpec action(const AlgebroidSpec& lie_spec, ContextPtr base,
                              std::vector<Derivation> actions);

  /// Tangent algebroid of a base: coordinate frame, identity anchor, zero
  /// bracket.
  static AlgebroidSpec tangent(ContextPtr base);

 private:
  ContextPtr base_;
  std::vector<FrameInfo> frames_;
  std::vector<Derivation> anchors_;
  std::vector<Element> c_;
  Element& c_at(std::size_t a, std::size_t b, std::size_t g) {
    return c_[(a * frames_.size() + b) * frames_.size() + g];
  }
};

/// A degree-j section X = f^a X_a in a fixed frame, stored by its coefficient
/// tuple (elements of the algebroid's total context, supported on the base).
struct Section {
  int degree = 0;
  std::vector<Element> coeffs;

  bool is_zero() const;
  bool operator==(const Section& rhs) const;
};

/// A built algebroid: the total context {base generators} + {fibre duals},
/// the homological differential, and the Cartan operations. Also functions
/// as the recovery path from a bare differential of anti-algebroid shape.
class Algebroid {
 public:
  /// Builds the total context and the differential
  ///   d = lambda^a rho_a - (-1)^{p_a (p_b - 1)} 1/2 lambda^a lambda^b c_ab^g
  /// with |lambda^a| = 1 - p_a and bidegree (1, -p_a).
  static Algebroid from_spec(const AlgebroidSpec& spec,
                             std::optional<Truncation> trunc = std::nullopt);

  /// Adopts an existing differential; validates the anti-algebroid shape
  /// (fibre-linear on base generators, fibre-quadratic on duals).
  static Algebroid from_differential(ContextPtr ctx, std::size_t base_count,
                                     Derivation d);

  const ContextPtr& ctx() const { return ctx_; }
  const Derivation& differential() const { return d_; }
  std::size_t base_count() const { return base_n_; }
  std::size_t frame_count() const { return ctx_->size() - base_n_; }
  std::size_t dual_index(std::size_t a) const { return base_n_ + a; }
  int frame_degree(std::size_t a) const {
    return 1 - ctx_->gen(dual_index(a)).degree;
  }

  /// Monomial fibre degree: total exponent in the dual generators.
  int fibre_degree(const Monomial& m) const;
  bool base_supported(const Element& e) const;

  Section frame_section(std::size_t a) const;
  Section section(int degree, std::vector<Element> coeffs) const;
  void validate_section(const Section& s) const;

  Section add(const Section& x, const Section& y) const;
  /// Left module action f X (degree |f| + |X|).
  Section scale(const Element& f, const Section& x) const;

  /// iota_X: duals -> coefficients, base -> 0; degree |X| - 1. Normalized by
  /// iota_{X_a}(lambda^b) = delta_a^b.
  Derivation contraction(const Section& x) const;
  /// L_X = [iota_X, d]; degree |X|.
  Derivation lie_derivative(const Section& x) const;
  /// The anchor rho(X) as a derivation (base images only).
  Derivation anchor(const Section& x) const;
  /// Bracket recovered through iota_{[X,Y]} = [[iota_X, d], iota_Y].
  Section bracket(const Section& x, const Section& y) const;

  /// Reads the anchor coefficient rho_a^i off the differential.
  Element anchor_coefficient(std::size_t a, std::size_t i) const;
  /// Structure function of two frame elements.
  Element structure_coefficient(std::size_t a, std::size_t b,
                                std::size_t g) const;
  /// Round-trip: spec with the same base/frames whose differential is d.
  AlgebroidSpec recovered_spec(const ContextPtr& base,
                               const std::vector<FrameInfo>& frames) const;

  /// Linear vector field test: base images base-supported, dual images
  /// fibre-linear.
  bool is_linear(const Derivation& xi) const;
  /// [d, Xi_1] = 0 for a linear vector field.
  bool is_morphic(const Derivation& xi) const;
  /// D_Xi X via iota_{D_Xi X} = [Xi_1, iota_X]; throws if the commutator is
  /// not a contraction.
  Section d_xi(const Derivation& xi, const Section& x) const;

  /// Element transport between base and total contexts.
  Element lift(const Element& base_elem) const;
  Element to_base(const ContextPtr& base, const Element& total_elem) const;
  Derivation lift_derivation(const Derivation& base_d) const;

 private:
  ContextPtr ctx_;
  std::size_t base_n_ = 0;
  Derivation d_;
};

/// An operator on sections satisfying D(fX) = phi(f) X + (-1)^{|f||D|} f D(X)
/// over the base action phi, given by its values on the frame.
struct SectionOperator {
  int degree = 0;
  Derivation base_action;  // on the algebroid's total context, base images
  std::vector<Section> frame_images;
};

Section apply_section_operator(const Algebroid& alg, const SectionOperator& op,
                               const Section& x);

/// Builds the linear vector field Xi_1 with d_xi(Xi_1, .) = op and base
/// action op.base_action, then checks it is morphic; throws spec_error with
/// a witness description if the hypotheses fail.
Derivation morphic_from_operator(const Algebroid& alg,
                                 const SectionOperator& op);

struct IdentityCheck {
  std::string identity;
  bool pass = true;
  std::string witness;  // first failing generator / pair, empty if pass
};

struct CartanReport {
  std::vector<IdentityCheck> lines;
  bool all_pass() const;
};

/// Verifies the five Cartan relations as exact operator identities on every
/// generator, over all pairs from the given sections (frame sections are
/// always included).
CartanReport check_cartan_relations(const Algebroid& alg,
                                    const std::vector<Section>& extra = {});

}  // namespace koszul
