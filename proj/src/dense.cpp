#include "bggforge/dense.hpp"

#include <string>

#include "bggforge/errors.hpp"

namespace bgg {

std::vector<int> rref(QMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!is_zero(m(i, col))) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
    Rational inv = 1 / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      Rational f = m(i, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(QMatrix m) { return int(rref(m).size()); }

QMatrix nullspace(const QMatrix& m) {
  QMatrix r = m;
  std::vector<int> pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<int> free;
  for (int j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);

  QMatrix basis(m.cols(), int(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    basis(free[f], int(f)) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], int(f)) = -r(int(i), free[f]);
  }
  return basis;
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("inverse of a non-square matrix");
  const int n = m.rows();
  QMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<int> pivots = rref(aug);
  if (int(pivots.size()) < n || (n > 0 && pivots[n - 1] != n - 1))
    throw InvalidArgument("singular matrix of size " + std::to_string(n));
  QMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<Rational> solve(const QMatrix& m, const std::vector<Rational>& b) {
  return inverse(m).apply(b);
}

}  // namespace bgg
