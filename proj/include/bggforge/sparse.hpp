#pragma once

#include <algorithm>
#include <cassert>
#include <vector>

#include "bggforge/dense.hpp"
#include "bggforge/rational.hpp"

namespace bgg {

template <class T>
struct Triplet {
  int row;
  int col;
  T value;
};

/// Compressed sparse row matrix. Entries are kept sorted row-major with no
/// explicit zeros, so two equal matrices have identical storage.
template <class T>
class SparseMatrix {
 public:
  SparseMatrix() : row_start_(1, 0) {}
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_start_(std::size_t(rows) + 1, 0) {}

  /// Duplicates are summed; resulting zeros are dropped.
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet<T>> t) {
    std::sort(t.begin(), t.end(), [](const Triplet<T>& a, const Triplet<T>& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseMatrix m(rows, cols);
    for (std::size_t i = 0; i < t.size();) {
      assert(t[i].row >= 0 && t[i].row < rows && t[i].col >= 0 && t[i].col < cols);
      T sum = t[i].value;
      std::size_t j = i + 1;
      for (; j < t.size() && t[j].row == t[i].row && t[j].col == t[i].col; ++j) sum += t[j].value;
      if (!is_zero(sum)) {
        m.col_.push_back(t[i].col);
        m.val_.push_back(sum);
        ++m.row_start_[t[i].row + 1];
      }
      i = j;
    }
    for (int r = 0; r < rows; ++r) m.row_start_[r + 1] += m.row_start_[r];
    return m;
  }

  static SparseMatrix identity(int n) {
    std::vector<Triplet<T>> t;
    t.reserve(n);
    for (int i = 0; i < n; ++i) t.push_back({i, i, T(1)});
    return from_triplets(n, n, std::move(t));
  }

  static SparseMatrix from_dense(const DenseMatrix<T>& d) {
    std::vector<Triplet<T>> t;
    for (int i = 0; i < d.rows(); ++i)
      for (int j = 0; j < d.cols(); ++j)
        if (!is_zero(d(i, j))) t.push_back({i, j, d(i, j)});
    return from_triplets(d.rows(), d.cols(), std::move(t));
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const { return val_.size(); }

  std::size_t row_begin(int r) const { return row_start_[r]; }
  std::size_t row_end(int r) const { return row_start_[r + 1]; }
  int col_at(std::size_t k) const { return col_[k]; }
  const T& value_at(std::size_t k) const { return val_[k]; }

  T coeff(int r, int c) const {
    auto first = col_.begin() + row_start_[r];
    auto last = col_.begin() + row_start_[r + 1];
    auto it = std::lower_bound(first, last, c);
    if (it != last && *it == c) return val_[it - col_.begin()];
    return T(0);
  }

  std::vector<Triplet<T>> triplets() const {
    std::vector<Triplet<T>> t;
    t.reserve(nnz());
    for (int r = 0; r < rows_; ++r)
      for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) t.push_back({r, col_[k], val_[k]});
    return t;
  }

  DenseMatrix<T> to_dense() const {
    DenseMatrix<T> d(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
      for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) d(r, col_[k]) = val_[k];
    return d;
  }

  SparseMatrix transpose() const {
    std::vector<Triplet<T>> t;
    t.reserve(nnz());
    for (int r = 0; r < rows_; ++r)
      for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) t.push_back({col_[k], r, val_[k]});
    return from_triplets(cols_, rows_, std::move(t));
  }

  bool is_zero_matrix() const { return val_.empty(); }

  std::vector<T> apply(const std::vector<T>& x) const {
    assert(int(x.size()) == cols_);
    std::vector<T> y(rows_, T(0));
    for (int r = 0; r < rows_; ++r)
      for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) y[r] += val_[k] * x[col_[k]];
    return y;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_start_ == b.row_start_ && a.col_ == b.col_ &&
           a.val_ == b.val_;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    assert(a.cols_ == b.rows_);
    SparseMatrix c(a.rows_, b.cols_);
    std::vector<T> acc(b.cols_, T(0));
    std::vector<char> used(b.cols_, 0);
    std::vector<int> touched;
    for (int r = 0; r < a.rows_; ++r) {
      touched.clear();
      for (std::size_t k = a.row_start_[r]; k < a.row_start_[r + 1]; ++k) {
        const int mid = a.col_[k];
        for (std::size_t l = b.row_start_[mid]; l < b.row_start_[mid + 1]; ++l) {
          const int j = b.col_[l];
          if (!used[j]) {
            used[j] = 1;
            touched.push_back(j);
          }
          acc[j] += a.val_[k] * b.val_[l];
        }
      }
      std::sort(touched.begin(), touched.end());
      for (int j : touched) {
        if (!is_zero(acc[j])) {
          c.col_.push_back(j);
          c.val_.push_back(acc[j]);
        }
        acc[j] = T(0);
        used[j] = 0;
      }
      c.row_start_[r + 1] = c.col_.size();
    }
    return c;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    auto t = a.triplets();
    auto tb = b.triplets();
    t.insert(t.end(), tb.begin(), tb.end());
    return from_triplets(a.rows_, a.cols_, std::move(t));
  }

  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + T(-1) * b; }

  friend SparseMatrix operator*(const T& s, SparseMatrix a) {
    if (is_zero(s)) return SparseMatrix(a.rows_, a.cols_);
    for (auto& v : a.val_) v *= s;
    return a;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::size_t> row_start_;
  std::vector<int> col_;
  std::vector<T> val_;
};

using QSparse = SparseMatrix<Rational>;

/// Kronecker product a ⊗ b.
template <class T>
SparseMatrix<T> kron(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
  std::vector<Triplet<T>> t;
  t.reserve(a.nnz() * b.nnz());
  for (const auto& x : a.triplets())
    for (const auto& y : b.triplets())
      t.push_back({x.row * b.rows() + y.row, x.col * b.cols() + y.col, x.value * y.value});
  return SparseMatrix<T>::from_triplets(a.rows() * b.rows(), a.cols() * b.cols(), std::move(t));
}

inline SparseMatrix<double> to_double(const QSparse& m) {
  std::vector<Triplet<double>> t;
  t.reserve(m.nnz());
  for (const auto& e : m.triplets()) t.push_back({e.row, e.col, e.value.get_d()});
  return SparseMatrix<double>::from_triplets(m.rows(), m.cols(), std::move(t));
}

/// Accumulates triplets of a block-structured matrix.
template <class T>
class BlockAssembler {
 public:
  BlockAssembler(int rows, int cols) : rows_(rows), cols_(cols) {}

  void add_block(int row_offset, int col_offset, const SparseMatrix<T>& block, const T& scale = T(1)) {
    for (const auto& e : block.triplets())
      t_.push_back({row_offset + e.row, col_offset + e.col, scale * e.value});
  }

  void add(int row, int col, const T& value) { t_.push_back({row, col, value}); }

  SparseMatrix<T> finish() { return SparseMatrix<T>::from_triplets(rows_, cols_, std::move(t_)); }

 private:
  int rows_;
  int cols_;
  std::vector<Triplet<T>> t_;
};

}  // namespace bgg
