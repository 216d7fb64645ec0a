#pragma once

#include <string>
#include <vector>

#include "koszul/derivation.hpp"
#include "koszul/linalg.hpp"

namespace koszul {

/// Picks one graded slice: either a total degree or a bidegree (p,q).
struct Selector {
  int degree = 0;
  std::optional<std::pair<int, int>> pq;

  static Selector total(int d) { return {d, std::nullopt}; }
  static Selector bidegree(int p, int q) {
    return {p + q, std::make_pair(p, q)};
  }
  Selector shifted(int d_offset,
                   std::optional<std::pair<int, int>> pq_offset) const;
  std::string to_string() const;
};

/// The finite monomial basis of one slice. `certified` means the enumeration
/// is provably complete without any truncation bound (no even generator of
/// degree <= 0 in the context); otherwise the basis is complete only up to
/// the context's truncation bound and all conclusions are provisional.
struct ComplexSlice {
  ContextPtr ctx;
  Selector selector;
  std::vector<Monomial> basis;
  bool certified = false;

  std::size_t dim() const { return basis.size(); }
  /// Index of a monomial in the basis, or nullopt.
  std::optional<std::size_t> find(const Monomial& m) const;
};

/// Deterministic (exponent-lexicographic by generator index) enumeration of
/// the monomials in a slice. Throws truncation_required when an even
/// generator of degree <= 0 is not covered by the truncation.
ComplexSlice enumerate_basis(const ContextPtr& ctx, const Selector& sel);

struct SliceMap {
  QMatrix matrix;  // columns indexed by source basis, rows by target basis
  ComplexSlice target;
  bool truncated = false;  // some image fell outside the truncation bound
};

/// Exact matrix of a homogeneous derivation from one slice to the adjacent
/// one. Images that escape a certified target raise spec_error; images beyond
/// the truncation bound of a provisional target set `truncated`.
SliceMap matrix_of(const Derivation& d, const ComplexSlice& source);

/// Coordinates of an element in a slice basis; nullopt if unrepresentable.
std::optional<std::vector<Rational>> coordinates_in(const ComplexSlice& slice,
                                                    const Element& e);

struct BettiRow {
  Selector selector;
  std::size_t dim = 0;        // slice dimension
  std::size_t rank_in = 0;    // rank of incoming differential
  std::size_t rank_out = 0;   // rank of outgoing differential
  long betti = 0;
  bool valid = false;  // the three relevant slices are certified
};

struct BettiTable {
  std::vector<BettiRow> rows;
};

/// Betti numbers of a homological derivation over a degree range, by exact
/// rank computation.
BettiTable betti(const ContextPtr& ctx, const Derivation& d, int degree_lo,
                 int degree_hi);

/// Betti numbers over a bidegree rectangle, for a derivation of homogeneous
/// bidegree.
BettiTable betti_bigraded(const ContextPtr& ctx, const Derivation& d,
                          std::pair<int, int> p_range,
                          std::pair<int, int> q_range);

/// A subspace of one slice: column vectors of coordinates.
struct Subspace {
  ComplexSlice slice;
  std::vector<std::vector<Rational>> vectors;

  std::size_t dim() const { return vectors.size(); }
  Element element(const ContextPtr& ctx, std::size_t k) const;
};

/// Exact basis of the joint kernel of an operator family on a slice.
Subspace joint_kernel(const std::vector<Derivation>& ops,
                      const ComplexSlice& slice);

struct SubcomplexBetti {
  BettiTable table;
  bool closed = true;        // D preserves the joint kernel on every slice
  std::string witness;       // description of the first closure failure
};

/// Betti numbers of D restricted to the joint kernel of the operator family.
/// Closure of the subcomplex is checked slice by slice.
SubcomplexBetti subcomplex_betti(const std::vector<Derivation>& ops,
                                 const Derivation& d, int degree_lo,
                                 int degree_hi);

/// Matrix of D restricted to explicit subspaces (columns of source vectors
/// expressed in the target vectors). Fails with nullopt when D leaves the
/// target subspace.
std::optional<QMatrix> restricted_matrix(const Derivation& d,
                                         const Subspace& source,
                                         const Subspace& target);

}  // namespace koszul
