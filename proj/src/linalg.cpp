#include "koszul/linalg.hpp"

#include <algorithm>

namespace koszul {

bool QMatrix::is_zero() const {
  for (const Rational& x : a_)
    if (!koszul::is_zero(x)) return false;
  return true;
}

bool QMatrix::operator==(const QMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw spec_error("matrix size mismatch in product");
  QMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a.at(i, k);
      if (koszul::is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Rational& bkj = b.at(k, j);
        if (!koszul::is_zero(bkj)) out.at(i, j) += aik * bkj;
      }
    }
  return out;
}

QMatrix QMatrix::stacked(const QMatrix& below) const {
  if (cols_ != below.cols_ && rows_ != 0 && below.rows_ != 0)
    throw spec_error("matrix size mismatch in stack");
  std::size_t c = rows_ ? cols_ : below.cols_;
  QMatrix out(rows_ + below.rows_, c);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
  for (std::size_t i = 0; i < below.rows_; ++i)
    for (std::size_t j = 0; j < below.cols_; ++j)
      out.at(rows_ + i, j) = below.at(i, j);
  return out;
}

std::size_t rank(const QMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  if (r == 0 || c == 0) return 0;
  // Clear denominators row by row, then run fraction-free elimination over Z.
  std::vector<std::vector<mpz_class>> a(r, std::vector<mpz_class>(c));
  for (std::size_t i = 0; i < r; ++i) {
    mpz_class l(1);
    for (std::size_t j = 0; j < c; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
              m.at(i, j).get_den().get_mpz_t());
    for (std::size_t j = 0; j < c; ++j) {
      mpq_class scaled = m.at(i, j) * Rational(l);
      a[i][j] = scaled.get_num();
    }
  }
  std::size_t rank_found = 0;
  mpz_class prev(1);
  for (std::size_t col = 0; col < c && rank_found < r; ++col) {
    std::size_t pivot = rank_found;
    while (pivot < r && a[pivot][col] == 0) ++pivot;
    if (pivot == r) continue;
    std::swap(a[pivot], a[rank_found]);
    const std::size_t pr = rank_found;
    for (std::size_t i = pr + 1; i < r; ++i) {
      for (std::size_t j = col + 1; j < c; ++j) {
        mpz_class t = a[pr][col] * a[i][j] - a[i][col] * a[pr][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[pr][col];
    ++rank_found;
  }
  return rank_found;
}

namespace {

// Gauss-Jordan to reduced row echelon form; returns pivot column per row.
std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && is_zero(m.at(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m.at(pivot, j), m.at(row, j));
    Rational inv = 1 / m.at(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m.at(i, col))) continue;
      Rational f = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m) {
  QMatrix r = m;
  std::vector<std::size_t> pivots = rref(r);
  std::vector<char> is_pivot(m.cols(), 0);
  for (std::size_t p : pivots) is_pivot[p] = 1;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -r.at(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(const QMatrix& m,
                                           const std::vector<Rational>& b) {
  if (b.size() != m.rows()) throw spec_error("rhs size mismatch in solve");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  std::vector<std::size_t> pivots = rref(aug);
  for (std::size_t p : pivots)
    if (p == m.cols()) return std::nullopt;  // inconsistent
  std::vector<Rational> x(m.cols(), Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x[pivots[i]] = aug.at(i, m.cols());
  return x;
}

}  // namespace koszul
