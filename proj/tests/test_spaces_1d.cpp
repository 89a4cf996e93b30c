#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "bggforge/errors.hpp"
#include "bggforge/spaces_1d.hpp"
#include "oracles.hpp"

using namespace bgg;

namespace {

std::vector<Rational> quarters() { return {0, Rational(1, 4), Rational(1, 2), Rational(3, 4), 1}; }

/// Spline dimension from multiplicities: (p+1) + Σ (p - r_i).
int spline_dim_oracle(int p, const std::vector<int>& r) {
  int d = p + 1;
  for (int x : r) d += p - x;
  return d;
}

/// Closed-form B-spline derivative: B_i' = c_i B_i^{p-1} - c_{i+1} B_{i+1}^{p-1},
/// c_i = p / (η_{i+p} - η_i), target basis B̃_j = B_{j+1}^{p-1}.
QMatrix bidiagonal_oracle(const Space1D& s) {
  const auto& t = s.knots;
  const int p = s.degree;
  auto c = [&](int i) -> Rational {
    if (i < 0 || i + p >= int(t.size()) || t[i + p] == t[i]) return 0;
    return Rational(p) / (t[i + p] - t[i]);
  };
  QMatrix d(s.dim - 1, s.dim);
  for (int i = 0; i < s.dim; ++i) {
    if (i - 1 >= 0) d(i - 1, i) += c(i);
    if (i < s.dim - 1) d(i, i) -= c(i + 1);
  }
  return d;
}

Params1D params(Family f, int p, int r, int cells) {
  Params1D pr;
  pr.family = f;
  pr.p = p;
  pr.r = r;
  pr.breaks = uniform_breakpoints(cells);
  return pr;
}

/// Leading principal minors of a symmetric matrix are positive (exact Sylvester test).
bool positive_definite(const QMatrix& g) {
  for (int k = 1; k <= g.rows(); ++k) {
    QMatrix m(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m(i, j) = g(i, j);
    // det via elimination
    Rational det = 1;
    for (int c = 0; c < k; ++c) {
      int piv = -1;
      for (int r = c; r < k; ++r)
        if (m(r, c) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return false;
      if (piv != c) {
        for (int j = 0; j < k; ++j) std::swap(m(piv, j), m(c, j));
        det = -det;
      }
      det *= m(c, c);
      for (int r = c + 1; r < k; ++r) {
        Rational f = m(r, c) / m(c, c);
        for (int j = c; j < k; ++j) m(r, j) -= f * m(c, j);
      }
    }
    if (det <= 0) return false;
  }
  return true;
}

Polynomial random_poly(std::mt19937& rng, int degree) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::vector<Rational> c;
  for (int i = 0; i <= degree; ++i) c.push_back(Rational(num(rng)) / den(rng));
  return Polynomial(c);
}

std::vector<Rational> mat_apply(const QMatrix& m, const std::vector<Rational>& x) { return m.apply(x); }

}  // namespace

TEST_CASE("spline dimensions") {
  CHECK(make_spline_space(2, quarters(), 1)->dim == 6);
  CHECK(make_spline_space(1, {0, 1}, std::vector<int>{})->dim == 2);
  CHECK(make_spline_space(3, uniform_breakpoints(2), 1)->dim == 6);
  for (int p = 0; p <= 4; ++p)
    for (int cells = 1; cells <= 4; ++cells)
      for (int r = -1; r <= p - 1; ++r) {
        auto b = uniform_breakpoints(cells);
        std::vector<int> rv(cells - 1, r);
        CHECK(make_spline_space(p, b, rv)->dim == spline_dim_oracle(p, rv));
      }
}

TEST_CASE("spline construction rejects bad regularity") {
  CHECK_THROWS_AS(make_spline_space(2, quarters(), 2), InvalidArgument);
  CHECK_THROWS_AS(make_spline_space(2, quarters(), -2), InvalidArgument);
  CHECK_THROWS_AS(make_spline_space(2, {0, Rational(1, 2), Rational(1, 2), 1}, 1), InvalidArgument);
}

TEST_CASE("Cox-de Boor evaluation") {
  auto s0 = make_spline_space(0, quarters(), -1);
  CHECK(eval_bspline(*s0, 1, Rational(1, 4)) == 1);
  CHECK(eval_bspline(*s0, 1, Rational(1, 2)) == 0);
  CHECK(eval_bspline(*s0, 0, Rational(1, 8)) == 1);

  std::vector<Rational> nonuniform{0, Rational(1, 3), Rational(1, 2), Rational(5, 6), 1};
  for (int p = 1; p <= 4; ++p) {
    auto s = make_spline_space(p, nonuniform, std::vector<int>{p - 1, std::max(p - 2, -1), 0});
    CHECK(eval_bspline(*s, 0, 0) == 1);
    CHECK(eval_bspline(*s, s->dim - 1, 1) == 1);
    for (int k = 0; k <= 100; ++k) {
      Rational x(k, 100);
      x.canonicalize();
      Rational sum = 0;
      for (int i = 0; i < s->dim; ++i) {
        Rational v = eval_bspline(*s, i, x);
        CHECK(v == s->basis[i](x));
        CHECK(v >= 0);
        sum += v;
      }
      CHECK(sum == 1);
    }
  }
  CHECK_THROWS_AS(eval_bspline(*s0, 7, 0), InvalidArgument);
}

TEST_CASE("derivative maps of splines") {
  auto lin = make_spline_space(1, {0, 1}, std::vector<int>{});
  DerivativeMap d = derivative_map_1d(lin);
  REQUIRE(d.matrix.rows() == 1);
  CHECK(d.matrix(0, 0) == -1);
  CHECK(d.matrix(0, 1) == 1);

  std::vector<Rational> nonuniform{0, Rational(1, 5), Rational(1, 2), Rational(7, 10), 1};
  for (int p = 1; p <= 4; ++p)
    for (int r = 0; r <= p - 1; ++r) {
      auto s = make_spline_space(p, nonuniform, r);
      CHECK(derivative_map_1d(s).matrix == bidiagonal_oracle(*s));
    }

  auto s = make_spline_space(2, quarters(), 1);
  DerivativeMap d1 = derivative_map_1d(s);
  CHECK(d1.target->dim == 5);
  CHECK(oracle::dense_rank(d1.matrix) == 5);
  DerivativeMap d2 = derivative_map_1d(d1.target);
  CHECK(oracle::dense_rank(d2.matrix * d1.matrix) == d2.target->dim);
  CHECK_THROWS_AS(derivative_map_1d(make_spline_space(2, quarters(), -1)), InvalidArgument);
}

TEST_CASE("Gram matrices") {
  auto s0 = make_spline_space(0, {0, 1}, std::vector<int>{});
  CHECK(gram_1d(*s0) == QMatrix::identity(1));
  auto s1 = make_spline_space(1, {0, 1}, std::vector<int>{});
  QMatrix g = gram_1d(*s1);
  CHECK(g(0, 0) == Rational(1, 3));
  CHECK(g(0, 1) == Rational(1, 6));
  CHECK(g(1, 1) == Rational(1, 3));
  for (int p = 1; p <= 3; ++p) {
    QMatrix gp = gram_1d(*make_spline_space(p, quarters(), p - 1));
    CHECK(gp == gp.transpose());
    CHECK(positive_definite(gp));
  }
  QMatrix gf = gram_1d(*make_fe_space(FeKind::W00, 3, 1, 2));
  CHECK(positive_definite(gf));
}

TEST_CASE("FE node functional sets") {
  auto w00 = commuting_node_functionals(fe_pattern(FeKind::W00, 3, 1), 0);
  REQUIRE(w00.size() == 4);
  CHECK(w00[0].kind == NodeFunctional::Kind::endpoint_sum);
  CHECK(w00[1].kind == NodeFunctional::Kind::point_derivative);
  CHECK(w00[1].order == 1);
  CHECK(w00[3].kind == NodeFunctional::Kind::legendre_moment);
  CHECK(w00[3].index == 0);
  CHECK(w00[3].of_derivative);

  auto w10 = standard_node_functionals(fe_pattern(FeKind::W10, 3, 1), 0);
  REQUIRE(w10.size() == 3);
  CHECK(w10[0].order == 0);
  CHECK(w10[1].endpoint == 1);
  CHECK(w10[2].kind == NodeFunctional::Kind::legendre_moment);
  CHECK_FALSE(w10[2].of_derivative);

  CHECK(standard_node_functionals(fe_pattern(FeKind::W11, 3, 1), 0).size() == 2);
}

TEST_CASE("FE unisolvence sweep") {
  for (int q = 1; q <= 5; ++q)
    for (int r = 0; 2 * r + 1 <= q; ++r)
      for (int cells = 1; cells <= 3; ++cells) {
        CAPTURE(q);
        CAPTURE(r);
        auto w00 = make_fe_space(FeKind::W00, q, r, cells);
        auto w10 = make_fe_space(FeKind::W10, q, r, cells);
        CHECK(w00->dim == cells * (q + 1) - (cells - 1) * (r + 1));
        CHECK(w10->dim == cells * q - (cells - 1) * r);
        if (r >= 1) {
          CHECK(make_fe_space(FeKind::W01, q, r, cells) == w10);
          auto w11 = make_fe_space(FeKind::W11, q, r, cells);
          CHECK(w11->dim == cells * (q - 1) - (cells - 1) * (r - 1));
        }
      }
  CHECK_THROWS_AS(make_fe_space(FeKind::W00, 2, 1, 2), InvalidArgument);
  CHECK_THROWS_AS(make_fe_space(FeKind::W11, 3, 0, 2), InvalidArgument);
}

TEST_CASE("derivative maps between coefficient spaces are onto") {
  for (Family fam : {Family::spline, Family::finite_element})
    for (int p = 1; p <= 4; ++p)
      for (int cells = 1; cells <= 4; ++cells)
        for (int r = 0; r <= p - 1; ++r) {
          if (fam == Family::finite_element && 2 * r + 1 > p) continue;
          Params1D pr = params(fam, p, r, cells);
          auto v0 = coefficient_space(pr, 0);
          auto v1 = coefficient_space(pr, 1);
          QMatrix d0 = derivative_map_1d(v0, v1).matrix;
          CHECK(oracle::dense_rank(d0) == v1->dim);
          if (p >= 2 && r >= 1) {
            auto v2 = coefficient_space(pr, 2);
            QMatrix d1 = derivative_map_1d(v1, v2).matrix;
            CHECK(oracle::dense_rank(d1) == v2->dim);
            CHECK(oracle::dense_rank(d1 * d0) == v2->dim);
          }
        }
}

TEST_CASE("projection property of canonical interpolants") {
  std::vector<SpaceHandle> spaces{make_spline_space(3, quarters(), 1), make_spline_space(2, quarters(), 0),
                                  make_fe_space(FeKind::W00, 3, 1, 3), make_fe_space(FeKind::W10, 5, 2, 2),
                                  make_fe_space(FeKind::W11, 3, 1, 2)};
  for (const auto& s : spaces)
    for (int j = 0; j < s->dim; ++j) {
      auto c = canonical_interp_1d(*s, Func1D::piecewise(s->basis[j]));
      for (int i = 0; i < s->dim; ++i) CHECK(c[i] == (i == j ? 1 : 0));
    }
}

TEST_CASE("spline antiderivative interpolants commute with differentiation") {
  std::mt19937 rng(7);
  for (int p = 2; p <= 4; ++p)
    for (int r = 1; r <= p - 1; ++r) {
      Params1D pr = params(Family::spline, p, r, 3);
      Interp1D pi0 = antiderivative_interp_1d(pr, 0);
      Interp1D pi1 = antiderivative_interp_1d(pr, 1);
      Interp1D pi2 = antiderivative_interp_1d(pr, 2);
      QMatrix d0 = derivative_map_1d(pi0.target, pi1.target).matrix;
      QMatrix d1 = derivative_map_1d(pi1.target, pi2.target).matrix;
      for (int trial = 0; trial < 3; ++trial) {
        Polynomial u = random_poly(rng, p + 3);
        Func1D fu = Func1D::polynomial(u);
        CHECK(mat_apply(d0, pi0.apply(fu)) == pi1.apply(fu.derivative()));
        CHECK(mat_apply(d1, pi1.apply(fu)) == pi2.apply(fu.derivative()));
      }
      // Piecewise input with kinks at non-mesh points.
      PiecewisePoly kink({0, Rational(1, 5), Rational(2, 3), 1},
                         {random_poly(rng, 2), random_poly(rng, 3), random_poly(rng, 1)});
      Func1D fk = Func1D::piecewise(kink.antiderivative());
      CHECK(mat_apply(d0, pi0.apply(fk)) == pi1.apply(Func1D::piecewise(kink)));

      // v = ∂s for s in the space: π̃₁ v = ∂s.
      for (int j = 0; j < pi0.target->dim; ++j) {
        Func1D ds = Func1D::piecewise(pi0.target->basis[j].derivative());
        std::vector<Rational> col(d0.rows());
        for (int i = 0; i < d0.rows(); ++i) col[i] = d0(i, j);
        CHECK(pi1.apply(ds) == col);
      }
      // v = 1 reproduces the constant.
      for (int level = 1; level <= 2; ++level) {
        const Interp1D& pi = level == 1 ? pi1 : pi2;
        PiecewisePoly one = combine(*pi.target, pi.apply(Func1D::polynomial(Polynomial::constant(1))));
        CHECK(one == PiecewisePoly::from_polynomial(Polynomial::constant(1), pr.breaks));
        CHECK(pi.apply(Func1D::polynomial(Polynomial())) == std::vector<Rational>(pi.target->dim, Rational(0)));
      }
    }
}

TEST_CASE("FE canonical interpolants commute and agree across node sets") {
  std::mt19937 rng(11);
  for (int q = 3; q <= 5; ++q)
    for (int r = 1; 2 * r + 1 <= q; ++r)
      for (int cells = 1; cells <= 3; ++cells) {
        CAPTURE(q);
        CAPTURE(r);
        CAPTURE(cells);
        Params1D pr = params(Family::finite_element, q, r, cells);
        Interp1D p00 = interp_1d(pr, 0, 0), p10 = interp_1d(pr, 1, 0), p01 = interp_1d(pr, 0, 1),
                 p11 = interp_1d(pr, 1, 1);
        Interp1D p00c = interp_1d(pr, 0, 0, NodeSet::commuting);
        QMatrix d0 = derivative_map_1d(p00.target, p10.target).matrix;
        QMatrix d1 = derivative_map_1d(p01.target, p11.target).matrix;
        for (int trial = 0; trial < 3; ++trial) {
          Func1D u = Func1D::polynomial(random_poly(rng, q + 2));
          CHECK(mat_apply(d0, p00.apply(u)) == p10.apply(u.derivative()));
          CHECK(mat_apply(d1, p01.apply(u)) == p11.apply(u.derivative()));
          CHECK(p01.apply(u) == p10.apply(u));
          CHECK(p00c.apply(u) == p00.apply(u));
          FePattern pat = fe_pattern(FeKind::W00, q, r);
          CHECK(fe_local_interpolant(pat, pr.breaks, u, NodeSet::standard) ==
                fe_local_interpolant(pat, pr.breaks, u, NodeSet::commuting));
          CHECK(fe_local_interpolant(pat, pr.breaks, u, NodeSet::standard) == combine(*p00.target, p00.apply(u)));
        }
        for (int j = 0; j < p10.target->dim; ++j) {
          Func1D phi = Func1D::piecewise(p10.target->basis[j]);
          CHECK(p01.apply(phi) == p10.apply(phi));
        }
      }
}

TEST_CASE("FE interpolation rejects inputs with jumps at shared jets") {
  Params1D pr = params(Family::finite_element, 3, 1, 2);
  PiecewisePoly kink({0, Rational(1, 2), 1}, {Polynomial({0, 1}), Polynomial({1, -1})});
  CHECK_THROWS_AS(interp_1d(pr, 0, 0).apply(Func1D::piecewise(kink)), InsufficientRegularity);
}

TEST_CASE("float commutation on trigonometric samples") {
  for (Family fam : {Family::spline, Family::finite_element}) {
    Params1D pr = params(fam, 3, 1, 3);
    Interp1D p00 = interp_1d(pr, 0, 0), p10 = interp_1d(pr, 1, 0), p01 = interp_1d(pr, 0, 1),
             p11 = interp_1d(pr, 1, 1);
    QMatrix d0 = derivative_map_1d(p00.target, p10.target).matrix;
    QMatrix d1 = derivative_map_1d(p01.target, p11.target).matrix;
    Func1D u = Func1D::trig(1.3, 2.7, 0.4);
    auto check = [](const QMatrix& d, const std::vector<double>& a, const std::vector<double>& b) {
      double num = 0, den = 0;
      for (int i = 0; i < d.rows(); ++i) {
        double v = 0;
        for (int j = 0; j < d.cols(); ++j) v += d(i, j).get_d() * a[j];
        num = std::max(num, std::abs(v - b[i]));
        den = std::max(den, std::abs(b[i]));
      }
      return num / den;
    };
    CHECK(check(d0, p00.apply_float(u), p10.apply_float(u.derivative())) <= 1e-10);
    CHECK(check(d1, p01.apply_float(u), p11.apply_float(u.derivative())) <= 1e-10);
  }
}

TEST_CASE("trigonometric moments match quadrature") {
  Polynomial p({1, -2, 3});
  double closed = trig_moment(p, 0.25, 0.5, 1.5, 3.0, 0.2);
  GaussRule g = gauss_legendre(20, 0.25, 0.5);
  double quad = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    quad += g.weights[i] * p.eval(g.nodes[i]) * 1.5 * std::sin(3.0 * g.nodes[i] + 0.2);
  CHECK(closed == doctest::Approx(quad).epsilon(1e-13));
}
