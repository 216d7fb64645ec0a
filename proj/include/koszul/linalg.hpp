#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "koszul/rational.hpp"

namespace koszul {

/// Dense exact rational matrix, row-major. Sized for desk-scale bases (up to
/// a few thousand rows/columns); all arithmetic exact.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  bool is_zero() const;
  bool operator==(const QMatrix& rhs) const;
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);

  /// Vertical stack [this; below].
  QMatrix stacked(const QMatrix& below) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Exact rank by fraction-free (Bareiss) elimination on the integer matrix
/// obtained by clearing row denominators.
std::size_t rank(const QMatrix& m);

/// Basis of the right null space {x : M x = 0}, each vector of length cols().
/// Deterministic: free columns in ascending order, pivot entries back-solved
/// over Q.
std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m);

/// Solves M x = b exactly. Returns nullopt when inconsistent; when the
/// solution is not unique the free variables are set to zero.
std::optional<std::vector<Rational>> solve(const QMatrix& m,
                                           const std::vector<Rational>& b);

}  // namespace koszul
