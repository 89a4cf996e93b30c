#include "bggforge/rank.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <utility>

#include "bggforge/errors.hpp"

namespace bgg {

namespace {

using IntRow = std::vector<std::pair<int, Integer>>;

IntRow primitive_row(const QSparse& m, int r) {
  IntRow row;
  Integer l = 1;
  for (std::size_t k = m.row_begin(r); k < m.row_end(r); ++k) l = lcm(l, m.value_at(k).get_den());
  for (std::size_t k = m.row_begin(r); k < m.row_end(r); ++k) {
    const Rational& v = m.value_at(k);
    row.emplace_back(m.col_at(k), Integer(v.get_num() * (l / v.get_den())));
  }
  return row;
}

void make_primitive(IntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row) {
    g = gcd(g, v);
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

const Integer* find_col(const IntRow& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const std::pair<int, Integer>& e, int c) { return e.first < c; });
  if (it != row.end() && it->first == col) return &it->second;
  return nullptr;
}

}  // namespace

int exact_rank(const QSparse& m) {
  const int nrows = m.rows();
  std::vector<IntRow> rows(nrows);
  std::vector<int> col_count(m.cols(), 0);
  std::vector<std::vector<int>> col_rows(m.cols());
  std::vector<char> active(nrows, 0);
  int remaining = 0;
  for (int r = 0; r < nrows; ++r) {
    rows[r] = primitive_row(m, r);
    if (rows[r].empty()) continue;
    active[r] = 1;
    ++remaining;
    for (const auto& e : rows[r]) {
      ++col_count[e.first];
      col_rows[e.first].push_back(r);
    }
  }

  int rank = 0;
  IntRow merged;
  while (remaining > 0) {
    int prow = -1;
    for (int r = 0; r < nrows; ++r)
      if (active[r] && (prow < 0 || rows[r].size() < rows[prow].size())) prow = r;

    int pcol = -1;
    for (const auto& e : rows[prow])
      if (pcol < 0 || col_count[e.first] < col_count[pcol]) pcol = e.first;

    const IntRow pivot_row = rows[prow];
    const Integer pivot = *find_col(pivot_row, pcol);
    active[prow] = 0;
    --remaining;
    ++rank;
    for (const auto& e : pivot_row) --col_count[e.first];

    std::vector<int> targets;
    for (int r : col_rows[pcol])
      if (active[r] && find_col(rows[r], pcol)) targets.push_back(r);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    Integer g, a, b;
    for (int r : targets) {
      IntRow& row = rows[r];
      const Integer& v = *find_col(row, pcol);
      g = gcd(pivot, v);
      a = pivot / g;
      b = v / g;
      merged.clear();
      merged.reserve(row.size() + pivot_row.size());
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < pivot_row.size()) {
        if (j == pivot_row.size() || (i < row.size() && row[i].first < pivot_row[j].first)) {
          merged.emplace_back(row[i].first, Integer(a * row[i].second));
          ++i;
        } else if (i == row.size() || pivot_row[j].first < row[i].first) {
          merged.emplace_back(pivot_row[j].first, Integer(-b * pivot_row[j].second));
          ++col_count[pivot_row[j].first];
          col_rows[pivot_row[j].first].push_back(r);
          ++j;
        } else {
          Integer x = a * row[i].second - b * pivot_row[j].second;
          if (sgn(x) != 0)
            merged.emplace_back(row[i].first, std::move(x));
          else
            --col_count[row[i].first];
          ++i;
          ++j;
        }
      }
      make_primitive(merged);
      row.swap(merged);
      if (row.empty()) {
        active[r] = 0;
        --remaining;
      }
    }
  }
  return rank;
}

int rank_mod_p(const QSparse& m, std::uint64_t p) {
  using u128 = unsigned __int128;
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) { return std::uint64_t(u128(x) * y % p); };
  auto powmod = [&](std::uint64_t x, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, x);
      x = mulmod(x, x);
      e >>= 1;
    }
    return r;
  };
  auto reduce = [p](const Integer& z) {
    Integer t = z % Integer(std::to_string(p));
    if (t < 0) t += Integer(std::to_string(p));
    return std::uint64_t(std::stoull(t.get_str()));
  };

  const int nr = m.rows(), nc = m.cols();
  std::vector<std::vector<std::uint64_t>> a(nr, std::vector<std::uint64_t>(nc, 0));
  for (const auto& e : m.triplets()) {
    std::uint64_t den = reduce(e.value.get_den());
    if (den == 0) throw InvalidArgument("prime divides a denominator");
    a[e.row][e.col] = mulmod(reduce(e.value.get_num()), powmod(den, p - 2));
  }
  int rank = 0;
  for (int c = 0; c < nc && rank < nr; ++c) {
    int piv = -1;
    for (int r = rank; r < nr; ++r)
      if (a[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    std::uint64_t inv = powmod(a[rank][c], p - 2);
    for (int r = rank + 1; r < nr; ++r) {
      if (!a[r][c]) continue;
      std::uint64_t f = mulmod(a[r][c], inv);
      for (int j = c; j < nc; ++j)
        if (a[rank][j]) a[r][j] = (a[r][j] + p - mulmod(f, a[rank][j])) % p;
    }
    ++rank;
  }
  return rank;
}

FloatRank float_rank(const SparseMatrix<double>& m, double tol) {
  FloatRank out;
  if (m.rows() == 0 || m.cols() == 0 || m.nnz() == 0) {
    out.margin = std::numeric_limits<double>::infinity();
    return out;
  }
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  for (const auto& e : m.triplets()) d(e.row, e.col) = e.value;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(d);
  const auto& s = svd.singularValues();
  out.sigma_max = s.size() ? s(0) : 0.0;
  out.threshold = tol * out.sigma_max;
  out.margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > out.threshold) ++out.rank;
    double ratio = s(i) > 0 ? s(i) / out.threshold : 0.0;
    double dist = ratio > 0 ? std::max(ratio, 1.0 / ratio) : std::numeric_limits<double>::infinity();
    out.margin = std::min(out.margin, dist);
  }
  out.indeterminate = out.margin < 10.0;
  return out;
}

}  // namespace bgg
