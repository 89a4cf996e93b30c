#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bggforge/errors.hpp"
#include "bggforge/polynomial.hpp"
#include "bggforge/rank.hpp"
#include "oracles.hpp"

using namespace bgg;

TEST_CASE("rational parsing and rendering") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational(""), InvalidArgument);
}

TEST_CASE("dense inverse and nullspace") {
  QMatrix a(2, 2);
  a(0, 0) = 2;
  a(0, 1) = 1;
  a(1, 0) = 1;
  a(1, 1) = 1;
  QMatrix inv = inverse(a);
  CHECK(a * inv == QMatrix::identity(2));

  QMatrix s(2, 3);
  s(0, 0) = 1;
  s(0, 1) = 2;
  s(1, 0) = 2;
  s(1, 1) = 4;
  s(1, 2) = 1;
  QMatrix ker = nullspace(s);
  CHECK(ker.cols() == 1);
  CHECK((s * ker).is_zero_matrix());
  CHECK_THROWS_AS(inverse(QMatrix(2, 2)), InvalidArgument);
}

TEST_CASE("sparse storage is canonical") {
  auto m = QSparse::from_triplets(2, 2, {{1, 1, 3}, {0, 0, 1}, {1, 1, -3}, {0, 1, 2}});
  CHECK(m.nnz() == 2);
  CHECK(m.coeff(0, 1) == 2);
  CHECK(m.coeff(1, 1) == 0);
  auto k = kron(QSparse::identity(2), m);
  CHECK(k.rows() == 4);
  CHECK(k.coeff(2, 3) == 2);
  CHECK((m * QSparse::identity(2)) == m);
}

TEST_CASE("exact rank agrees with dense elimination and modular rank") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> val(-3, 3), keep(0, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const int r = 1 + trial % 9, c = 1 + (trial * 7) % 11;
    std::vector<Triplet<Rational>> t;
    // Low-rank structure: rows are combinations of a few random rows.
    const int base = 1 + trial % 4;
    std::vector<std::vector<Rational>> basis(base, std::vector<Rational>(c));
    for (auto& row : basis)
      for (auto& x : row) x = keep(rng) ? Rational(0) : Rational(val(rng)) / (1 + keep(rng));
    for (int i = 0; i < r; ++i) {
      std::vector<Rational> row(c, Rational(0));
      for (int b = 0; b < base; ++b) {
        Rational f(val(rng));
        for (int j = 0; j < c; ++j) row[j] += f * basis[b][j];
      }
      for (int j = 0; j < c; ++j)
        if (row[j] != 0) t.push_back({i, j, row[j]});
    }
    auto m = QSparse::from_triplets(r, c, t);
    const int expected = oracle::dense_rank(m.to_dense());
    CHECK(exact_rank(m) == expected);
    CHECK(rank_mod_p(m, 2305843009213693951ULL) == expected);
    CHECK(float_rank(to_double(m), 1e-10).rank == expected);
  }
}

TEST_CASE("float rank flags near-threshold singular values") {
  std::vector<Triplet<double>> t{{0, 0, 1.0}, {1, 1, 5e-10}};
  auto m = SparseMatrix<double>::from_triplets(2, 2, t);
  FloatRank fr = float_rank(m, 1e-10);
  CHECK(fr.indeterminate);
  std::vector<Triplet<double>> t2{{0, 0, 1.0}, {1, 1, 1e-3}};
  CHECK_FALSE(float_rank(SparseMatrix<double>::from_triplets(2, 2, t2), 1e-10).indeterminate);
}

TEST_CASE("polynomials and shifted Legendre") {
  Polynomial p({1, 2, 3});
  CHECK(p(Rational(2)) == 17);
  CHECK(p.derivative() == Polynomial({2, 6}));
  CHECK(p.integrate(0, 1) == 3);
  for (int i = 0; i < 6; ++i) {
    Polynomial li = legendre_on(i, Rational(1, 4), Rational(1, 2));
    CHECK(li(Rational(1, 2)) == 1);
    for (int j = 0; j < i; ++j)
      CHECK((li * legendre_on(j, Rational(1, 4), Rational(1, 2))).integrate(Rational(1, 4), Rational(1, 2)) == 0);
  }
}

TEST_CASE("piecewise antiderivative and tail integral") {
  std::vector<Rational> b{0, Rational(1, 2), 1};
  PiecewisePoly f(b, {Polynomial::constant(1), Polynomial({0, 1})});
  PiecewisePoly F = f.antiderivative();
  CHECK(F(Rational(1, 2)) == Rational(1, 2));
  CHECK(F(Rational(1)) == Rational(1, 2) + Rational(3, 8));
  PiecewisePoly W = f.tail_integral();
  CHECK(W(Rational(0)) == F(Rational(1)));
  CHECK(W(Rational(1)) == 0);
  CHECK(W.derivative() == Rational(-1) * f);
}

TEST_CASE("Gauss rule integrates polynomials of degree 2n-1") {
  GaussRule g = gauss_legendre(4, 0.0, 2.0);
  double s = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], 7);
  CHECK(s == doctest::Approx(256.0 / 8.0).epsilon(1e-13));
}
