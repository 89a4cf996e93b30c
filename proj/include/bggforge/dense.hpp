#pragma once

#include <cassert>
#include <vector>

#include "bggforge/rational.hpp"

namespace bgg {

/// Row-major dense matrix. Used for small algebraic fibers and local 1D systems.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, T(0)) {}

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[std::size_t(i) * cols_ + j];
  }
  const T& operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[std::size_t(i) * cols_ + j];
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  DenseMatrix col_block(const std::vector<int>& cols) const {
    DenseMatrix b(rows_, int(cols.size()));
    for (int i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) b(i, int(j)) = (*this)(i, cols[j]);
    return b;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    assert(a.cols_ == b.rows_);
    DenseMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend DenseMatrix operator*(const T& s, DenseMatrix a) {
    for (auto& v : a.data_) v *= s;
    return a;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<T> apply(const std::vector<T>& x) const {
    assert(int(x.size()) == cols_);
    std::vector<T> y(rows_, T(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!is_zero((*this)(i, j))) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  bool is_zero_matrix() const {
    for (const auto& v : data_)
      if (!is_zero(v)) return false;
    return true;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = DenseMatrix<Rational>;

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMatrix& m);

int rank(QMatrix m);

/// Columns form a basis of ker(m), one column per free variable (RREF order).
QMatrix nullspace(const QMatrix& m);

/// Throws InvalidArgument when m is not square or singular.
QMatrix inverse(const QMatrix& m);

/// Solves m x = b for square nonsingular m.
std::vector<Rational> solve(const QMatrix& m, const std::vector<Rational>& b);

}  // namespace bgg
