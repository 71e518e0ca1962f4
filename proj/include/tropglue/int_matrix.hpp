#pragma once

#include "tropglue/integer.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

namespace tropglue {

// Row-major integer matrix, viewed as a map Z^cols -> Z^rows.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVector> &rows,
                             std::size_t cols_if_empty = 0) {
    std::size_t c = rows.empty() ? cols_if_empty : rows[0].size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c)
        throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j)
        m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVector> &cols,
                                std::size_t rows_if_empty = 0) {
    return from_rows(cols, rows_if_empty).transpose();
  }

  static IntMatrix from_ll(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<IntVector> rs;
    for (auto &r : rows)
      rs.push_back(int_vector(r));
    return from_rows(rs);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer &operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer &operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  IntVector row(std::size_t i) const {
    return IntVector(entries_.begin() + i * cols_, entries_.begin() + (i + 1) * cols_);
  }
  IntVector column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      c[i] = (*this)(i, j);
    return c;
  }
  std::vector<IntVector> columns() const {
    std::vector<IntVector> cs;
    for (std::size_t j = 0; j < cols_; ++j)
      cs.push_back(column(j));
    return cs;
  }
  std::vector<IntVector> row_list() const {
    std::vector<IntVector> rs;
    for (std::size_t i = 0; i < rows_; ++i)
      rs.push_back(row(i));
    return rs;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  IntVector operator*(const IntVector &v) const {
    assert(v.size() == cols_);
    IntVector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        r[i] += (*this)(i, j) * v[j];
    return r;
  }

  IntMatrix operator*(const IntMatrix &o) const {
    if (cols_ != o.rows_)
      throw std::invalid_argument("matrix shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Integer &a = (*this)(i, k);
        if (a == 0)
          continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r(i, j) += a * o(k, j);
      }
    return r;
  }

  IntMatrix operator-() const {
    IntMatrix r = *this;
    for (auto &x : r.entries_)
      x = -x;
    return r;
  }

  bool operator==(const IntMatrix &o) const = default;

  // selected rows / columns
  IntMatrix select_columns(std::size_t begin, std::size_t end) const {
    IntMatrix r(rows_, end - begin);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = begin; j < end; ++j)
        r(i, j - begin) = (*this)(i, j);
    return r;
  }
  IntMatrix select_rows(std::size_t begin, std::size_t end) const {
    IntMatrix r(end - begin, cols_);
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        r(i - begin, j) = (*this)(i, j);
    return r;
  }

  // writes `block` with its top-left corner at (r0, c0)
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix &block) {
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j)
        (*this)(r0 + i, c0 + j) = block(i, j);
  }
  void add_block(std::size_t r0, std::size_t c0, const IntMatrix &block,
                 const Integer &sign = 1) {
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j)
        (*this)(r0 + i, c0 + j) += sign * block(i, j);
  }

  static IntMatrix hstack(const IntMatrix &a, const IntMatrix &b) {
    if (a.rows() != b.rows())
      throw std::invalid_argument("hstack row mismatch");
    IntMatrix r(a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
  }
  static IntMatrix vstack(const IntMatrix &a, const IntMatrix &b) {
    if (a.cols() != b.cols())
      throw std::invalid_argument("vstack column mismatch");
    IntMatrix r(a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }
  // row_dst += c * row_src
  void add_row(std::size_t dst, std::size_t src, const Integer &c) {
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(dst, j) += c * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer &c) {
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, dst) += c * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, c) = -(*this)(i, c);
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](auto &x) { return x == 0; });
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> entries_;
};

inline std::ostream &operator<<(std::ostream &os, const IntMatrix &m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

// exact determinant by fraction-free elimination (Bareiss)
inline Integer determinant(IntMatrix a) {
  std::size_t n = a.rows();
  if (n != a.cols())
    throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0)
    return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0)
        ++p;
      if (p == n)
        return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

} // namespace tropglue
