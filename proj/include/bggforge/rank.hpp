#pragma once

#include <cstdint>

#include "bggforge/sparse.hpp"

namespace bgg {

/// Exact rank over Q. Rows are scaled to primitive integer vectors and
/// eliminated fraction-free with a sparsity-aware pivot order.
int exact_rank(const QSparse& m);

/// Rank over the prime field Z/pZ. Never exceeds the rank over Q.
int rank_mod_p(const QSparse& m, std::uint64_t p);

struct FloatRank {
  int rank = 0;
  double sigma_max = 0.0;
  double threshold = 0.0;
  /// Smallest ratio sigma/threshold among singular values, taken as max(r, 1/r);
  /// below 10 means some singular value sits too close to the cut.
  double margin = 0.0;
  bool indeterminate = false;
};

/// Rank by singular-value thresholding at tol * sigma_max.
FloatRank float_rank(const SparseMatrix<double>& m, double tol);

}  // namespace bgg
