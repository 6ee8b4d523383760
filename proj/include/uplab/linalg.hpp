#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational_field.hpp"

namespace uplab {

/// Dense row-major matrix over a field context (FiniteField or RationalField).
template <class Field>
class ExactMatrix {
 public:
  using Element = typename Field::Element;

  ExactMatrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  ExactMatrix(Field field, std::size_t rows, std::size_t cols, std::vector<Element> data)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) fail(ErrorCode::InvalidInput, "entry count does not match dimensions");
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  /// Submatrix made of the given rows, in the given order.
  ExactMatrix select_rows(std::span<const std::size_t> which) const {
    ExactMatrix out(field_, which.size(), cols_);
    for (std::size_t i = 0; i < which.size(); ++i) {
      for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(which[i], c);
    }
    return out;
  }

  std::vector<Element> multiply(std::span<const Element> v) const {
    std::vector<Element> out(rows_, field_.zero());
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out[r] = field_.add(out[r], field_.mul((*this)(r, c), v[c]));
    }
    return out;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
template <class Field>
std::vector<std::size_t> rref(ExactMatrix<Field>& m) {
  const Field& F = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && F.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(piv, k), m(r, k));
    }
    const auto inv = F.inv(m(r, c));
    for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = F.mul(m(r, k), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || F.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(i, k) = F.sub(m(i, k), F.mul(factor, m(r, k)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

namespace detail {

/// Row echelon rank with partial pivoting (first nonzero entry in column).
template <class Field>
std::size_t rank_by_elimination(ExactMatrix<Field> m) {
  const Field& F = m.field();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && F.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      for (std::size_t k = c; k < m.cols(); ++k) std::swap(m(piv, k), m(r, k));
    }
    const auto inv = F.inv(m(r, c));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (F.is_zero(m(i, c))) continue;
      const auto factor = F.mul(m(i, c), inv);
      for (std::size_t k = c; k < m.cols(); ++k) m(i, k) = F.sub(m(i, k), F.mul(factor, m(r, k)));
    }
    ++r;
  }
  return r;
}

/// Bareiss fraction-free elimination on an integer matrix.
inline std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> a) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a[0].size();
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[i][k] = (a[r][c] * a[i][k] - a[i][c] * a[r][k]);
        mpz_divexact(a[i][k].get_mpz_t(), a[i][k].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace detail

template <class Field>
std::size_t rank(const ExactMatrix<Field>& m) {
  return detail::rank_by_elimination(m);
}

/// Over Q: clear denominators row by row, then fraction-free elimination.
inline std::size_t rank(const ExactMatrix<RationalField>& m) {
  std::vector<std::vector<mpz_class>> ints(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) ints[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
  }
  return detail::bareiss_rank(std::move(ints));
}

/// Basis of the right kernel in canonical form: one vector per non-pivot
/// column j of the reduced echelon form, with a 1 in position j, ordered by j.
template <class Field>
std::vector<std::vector<typename Field::Element>> kernel_basis(const ExactMatrix<Field>& m) {
  const Field& F = m.field();
  ExactMatrix<Field> e = m;
  const auto pivots = rref(e);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename Field::Element>> basis;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    std::vector<typename Field::Element> v(m.cols(), F.zero());
    v[j] = F.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(e(i, j));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace uplab
