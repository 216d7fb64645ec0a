#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszul/rational.hpp"

namespace koszul {

/// One named generator of a free graded-commutative algebra. The degree may
/// be negative or zero; parity (degree mod 2) drives every sign rule. The
/// bidegree (p_weight, q_weight) must sum to the degree and is used for
/// double-complex bookkeeping.
struct Generator {
  std::string name;
  int degree = 0;
  int p_weight = 0;
  int q_weight = 0;

  bool odd() const { return is_odd(degree); }
};

/// A total-exponent cap on a designated subset of generators. Needed whenever
/// the grading alone does not bound monomials (degree-0 or negative-degree
/// even generators).
struct Truncation {
  std::vector<std::size_t> indices;
  int bound = 0;
};

class Context;
using ContextPtr = std::shared_ptr<const Context>;

/// An ordered table of generators. Every Element and Derivation refers to
/// exactly one Context; contexts are immutable once built.
class Context {
 public:
  static ContextPtr make(std::vector<Generator> gens,
                         std::optional<Truncation> trunc = std::nullopt);

  std::size_t size() const { return gens_.size(); }
  const Generator& gen(std::size_t i) const { return gens_[i]; }
  const std::vector<Generator>& generators() const { return gens_; }

  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;

  const std::optional<Truncation>& truncation() const { return trunc_; }
  bool truncated_gen(std::size_t i) const { return trunc_mask_[i]; }

  /// True when each graded slice is finite without any truncation, i.e. no
  /// even generator of degree <= 0 exists.
  bool finitely_graded() const { return finitely_graded_; }

  /// A context with the same generators and a different truncation.
  ContextPtr with_truncation(std::optional<Truncation> trunc) const;

 private:
  Context() = default;
  std::vector<Generator> gens_;
  std::map<std::string, std::size_t> by_name_;
  std::optional<Truncation> trunc_;
  std::vector<char> trunc_mask_;
  bool finitely_graded_ = false;
};

}  // namespace koszul
