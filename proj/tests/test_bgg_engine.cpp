#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bggforge/bgg_engine.hpp"
#include "bggforge/errors.hpp"
#include "oracles.hpp"

using namespace bgg;

namespace {

int fiber_dim_oracle(int i, int J, int n) {
  // Complement of ran(s^{i-1,J}) in Alt^{i,J-1} for i < J, kernel of s^{i,J} for i >= J.
  if (i < J) {
    const int amb = int(oracle::choose(n, i) * oracle::choose(n, J - 1));
    return i == 0 ? amb : amb - oracle::dense_rank(oracle::brute_force_s(i - 1, J, n));
  }
  const int amb = int(oracle::choose(n, i) * oracle::choose(n, J));
  return i == n ? amb : amb - oracle::dense_rank(oracle::brute_force_s(i, J, n));
}

}  // namespace

TEST_CASE("one-dimensional BGG diagram") {
  for (int cells : {1, 2}) {
    TensorParams tp = TensorParams::uniform(1, Family::spline, 3, 2, cells);
    BggDiagram g = build_diagram(tp, 1);
    CHECK(g.S[0].matrix == QSparse::identity(g.S[0].matrix.rows()));
    BggComplex c = derive_complex(g);
    REQUIRE(c.operators.size() == 1);
    auto v0 = g.top[0]->components()[0].fibers[0];
    DerivativeMap d1 = derivative_map_1d(v0);
    DerivativeMap d2 = derivative_map_1d(d1.target);
    CHECK(c.operators[0] == QSparse::from_dense(d2.matrix * d1.matrix));
    CohomologyReport r = cohomology(g, c);
    CHECK(r.derived.h == std::vector<int>{2, 0});
    CHECK(r.rows_expected);
    WitnessCheck w = check_kernel_witnesses(g, c);
    CHECK(w.count == 2);
    CHECK(w.independent == 2);
    CHECK(w.all_in_kernel);
  }
}

TEST_CASE("presets: conditions, cohomology and kernel witnesses") {
  const std::map<PresetName, std::vector<int>> expected = {
      {PresetName::hessian2d, {3, 0, 0}},       {PresetName::stress2d, {3, 0, 0}},
      {PresetName::stress2d_rotated, {3, 0, 0}}, {PresetName::hessian3d, {4, 0, 0, 0}},
      {PresetName::elasticity3d, {6, 0, 0, 0}}, {PresetName::divdiv3d, {4, 0, 0, 0}}};
  for (Family fam : {Family::spline, Family::finite_element})
    for (const auto& [name, h] : expected) {
      CAPTURE(to_string(name));
      CAPTURE(to_string(fam));
      const PresetInfo info = preset_info(name);
      PresetResult pr = preset(name, TensorParams::uniform(info.n, fam, 3, 1, 2));
      CHECK(pr.diagram.verified());
      CHECK(pr.diagram.sign == -1);
      CHECK(pr.complex.is_complex());
      for (int i = 0; i <= info.n; ++i) {
        const auto& s = pr.complex.spaces[i];
        CHECK(s.fiber_basis.cols() == fiber_dim_oracle(i, info.J, info.n));
        int expect_dim = 0;
        for (int c = 0; c < s.fiber_basis.cols(); ++c)
          for (int row = 0; row < s.fiber_basis.rows(); ++row)
            if (s.fiber_basis(row, c) != 0) {
              expect_dim += s.ambient->components()[row].dim;
              break;
            }
        CHECK(s.dim() == expect_dim);
      }
      CohomologyReport r = cohomology(pr.diagram, pr.complex);
      CHECK(r.derived.h == h);
      CHECK(r.rows_expected);
      CHECK(r.bound_holds());
      CHECK(r.equality_at_zero);
      CHECK(r.euler_ok);
      WitnessCheck w = check_kernel_witnesses(pr.diagram, pr.complex);
      CHECK(w.count == h[0]);
      CHECK(w.independent == h[0]);
      CHECK(w.all_in_kernel);
    }
}

TEST_CASE("float mode agrees with exact ranks") {
  PresetResult pr = preset(PresetName::elasticity3d, TensorParams::uniform(3, Family::spline, 3, 1, 1));
  CohomologyReport exact = cohomology(pr.diagram, pr.complex);
  CohomologyReport fl = cohomology(pr.diagram, pr.complex, {Arithmetic::floating, 1e-10});
  CHECK(fl.derived.h == exact.derived.h);
  CHECK(fl.top_row.h == exact.top_row.h);
  CHECK_FALSE(fl.indeterminate);
}

TEST_CASE("derived fibers have the expected symmetry") {
  // Hessian: Υ^1 symmetric (6), Υ^2 trace-free (8).
  PresetResult h = preset(PresetName::hessian3d, TensorParams::uniform(3, Family::spline, 2, 1, 1));
  CHECK(h.complex.spaces[1].kind == DerivedSpace::Kind::kernel);
  CHECK(h.complex.spaces[1].fiber_basis.cols() == 6);
  CHECK(h.complex.spaces[2].fiber_basis.cols() == 8);
  // Every kernel vector of S^{1,1} is symmetric in proxy coordinates.
  QMatrix p = proxy_identify(1, 1, 3);
  QMatrix sym = p * h.complex.spaces[1].fiber_basis;
  for (int c = 0; c < sym.cols(); ++c)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) CHECK(sym(3 * a + b, c) == sym(3 * b + a, c));
  // Trace-free matrices for Υ^2 = ker S^{2,1}.
  QMatrix tf = proxy_map(ProxyName::tr, 3) * proxy_identify(2, 1, 3) * h.complex.spaces[2].fiber_basis;
  CHECK(tf.is_zero_matrix());

  PresetResult e = preset(PresetName::elasticity3d, TensorParams::uniform(3, Family::spline, 2, 1, 1));
  CHECK(e.complex.spaces[1].kind == DerivedSpace::Kind::range_perp);
  CHECK(e.complex.spaces[1].fiber_basis.cols() == 6);
  CHECK(e.complex.spaces[2].fiber_basis.cols() == 6);
}

TEST_CASE("random admissible configurations yield complexes") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 3;
    TensorParams tp;
    tp.n = n;
    tp.family = trial % 4 == 3 ? Family::finite_element : Family::spline;
    for (int h = 0; h < n; ++h) {
      Params1D d;
      d.family = tp.family;
      d.p = tp.family == Family::spline ? 2 + int(rng() % 3) : 3 + int(rng() % 2);
      d.r = tp.family == Family::spline ? 1 + int(rng() % (d.p - 1)) : 1;
      d.breaks = uniform_breakpoints(1 + int(rng() % (n == 3 ? 2 : 3)));
      tp.dirs.push_back(d);
    }
    const int J = 1 + int(rng() % n);
    CAPTURE(trial);
    BggDiagram g = build_diagram(tp, J);
    BggComplex c = derive_complex(g);
    CHECK(c.is_complex());
    CohomologyReport r = cohomology(g, c);
    CHECK(r.bound_holds());
    CHECK(r.euler_ok);
    CHECK(r.derived.h[0] == int(oracle::choose(n, J - 1) + oracle::choose(n, J)));
  }
}

TEST_CASE("preset constraints and bad indices are rejected") {
  CHECK_THROWS_AS(preset(PresetName::hessian3d, TensorParams::uniform(2, Family::spline, 3, 1, 1)), InvalidArgument);
  CHECK_THROWS_AS(preset(PresetName::hessian2d, TensorParams::uniform(2, Family::spline, 1, 0, 1)), InvalidArgument);
  CHECK_THROWS_AS(preset(PresetName::hessian2d, TensorParams::uniform(2, Family::spline, 3, 0, 2)), InvalidArgument);
  CHECK_THROWS_AS(preset(PresetName::divdiv3d, TensorParams::uniform(3, Family::finite_element, 5, 2, 1)),
                  InvalidArgument);
  CHECK_THROWS_AS(build_diagram(TensorParams::uniform(2, Family::spline, 3, 1, 1), 3), InvalidArgument);
  CHECK_THROWS_AS(parse_preset("maxwell"), InvalidArgument);
}

TEST_CASE("space tables of the presets") {
  PresetResult dd = preset(PresetName::divdiv3d, TensorParams::uniform(3, Family::spline, 3, 1, 2));
  REQUIRE(dd.tables.size() == 4);
  CHECK(dd.tables[3].entries == std::vector<std::vector<std::string>>{{"S^{1,1,1}_{-1,-1,-1}"}});
  CHECK(dd.tables[0].entries.size() == 1);
  CHECK(dd.tables[0].entries[0].size() == 3);
  CHECK(dd.tables[0].entries[0][0] == "S^{3,2,2}_{1,0,0}");

  PresetResult st = preset(PresetName::stress2d, TensorParams::uniform(2, Family::spline, 3, 1, 2));
  CHECK(st.tables[2].entries == std::vector<std::vector<std::string>>{{"S^{2,1}_{0,-1}", "S^{1,2}_{-1,0}"}});
  CHECK(st.tables[0].entries == std::vector<std::vector<std::string>>{{"S^{3,3}_{1,1}"}});
}
