#include "bggforge/bgg_engine.hpp"

#include <map>

#include "bggforge/errors.hpp"
#include "bggforge/parallel.hpp"
#include "bggforge/rank.hpp"

namespace bgg {

namespace {

std::string row_name(int j) { return "row " + std::to_string(j); }

ConditionCheck check(std::string kind, int index, bool ok, std::string detail) {
  return {std::move(kind), index, ok, ok ? std::string() : std::move(detail)};
}

}  // namespace

bool BggDiagram::verified() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

BggDiagram assemble_diagram(const TensorParams& params, int J) {
  const int n = params.n;
  if (n < 1) throw InvalidArgument("dimension n must be at least 1");
  if (J < 1 || J > n) throw InvalidArgument("connecting index J must satisfy 1 <= J <= n");
  BggDiagram g;
  g.n = n;
  g.J = J;
  g.params = params;
  for (int k = 0; k <= n; ++k) {
    g.top.push_back(make_tensor_space(params, k, J - 1));
    g.bottom.push_back(make_tensor_space(params, k, J));
  }
  for (int k = 0; k < n; ++k) {
    g.d_top.push_back(ext_derivative(g.top[k], g.top[k + 1]));
    g.d_bottom.push_back(ext_derivative(g.bottom[k], g.bottom[k + 1]));
    g.S.push_back(s_operator(g.bottom[k], g.top[k + 1]));
  }

  for (int k = 0; k + 2 <= n; ++k) {
    g.checks.push_back(check("not-complex", k, (g.d_top[k + 1].matrix * g.d_top[k].matrix).is_zero_matrix(),
                             row_name(J - 1) + ": d^" + std::to_string(k + 1) + " d^" + std::to_string(k) + " != 0"));
    g.checks.push_back(check("not-complex", k, (g.d_bottom[k + 1].matrix * g.d_bottom[k].matrix).is_zero_matrix(),
                             row_name(J) + ": d^" + std::to_string(k + 1) + " d^" + std::to_string(k) + " != 0"));
  }

  // d S^{k,J} against S^{k+1,J} d, recording the realized sign.
  for (int k = 0; k + 2 <= n; ++k) {
    QSparse ds = g.d_top[k + 1].matrix * g.S[k].matrix;
    QSparse sd = g.S[k + 1].matrix * g.d_bottom[k].matrix;
    int sign = 0;
    bool ok = true;
    if ((ds + sd).is_zero_matrix()) {
      sign = ds.is_zero_matrix() ? 0 : -1;
    } else if ((ds - sd).is_zero_matrix()) {
      sign = 1;
    } else {
      ok = false;
    }
    if (ok && sign != 0) {
      if (g.sign != 0 && g.sign != sign) ok = false;
      g.sign = sign;
    }
    g.checks.push_back(check("not-anticommuting", k, ok,
                             "d S^{" + std::to_string(k) + "," + std::to_string(J) + "} is not ±S d"));
  }

  g.rank_pattern.resize(n);
  parallel_for(n, [&](int k) {
    const auto& m = g.S[k].matrix;
    g.rank_pattern[k] = {k, m.rows(), m.cols(), exact_rank(m)};
  });
  for (int k = 0; k < n; ++k) {
    const SRank& r = g.rank_pattern[k];
    const bool ok = r.injective() == (k < J) && r.surjective() == (k >= J - 1);
    g.checks.push_back(check("S-rank-pattern", k, ok,
                             "rank " + std::to_string(r.rank) + " of " + std::to_string(r.rows) + "x" +
                                 std::to_string(r.cols) + " S^{" + std::to_string(k) + "," + std::to_string(J) + "}"));
  }

  const SRank& sj = g.rank_pattern[J - 1];
  const bool bijective = sj.rows == sj.cols && sj.rank == sj.rows;
  g.checks.push_back(check("S-not-bijective-at-J", J - 1, bijective,
                           "S^{" + std::to_string(J - 1) + "," + std::to_string(J) + "} is not invertible"));
  if (bijective) {
    QMatrix inv = inverse(s_matrix(J - 1, J, n).matrix);
    g.S_inverse = fiber_operator(*g.top[J], inv, *g.bottom[J - 1]);
    if (!(g.S_inverse * g.S[J - 1].matrix == QSparse::identity(sj.cols)))
      throw InternalError("fiberwise inverse of S does not invert the assembled matrix");
  }
  return g;
}

BggDiagram build_diagram(const TensorParams& params, int J) {
  BggDiagram g = assemble_diagram(params, J);
  for (const auto& c : g.checks)
    if (!c.passed) throw ConditionViolation(c.kind, c.index, c.detail);
  return g;
}

std::string to_string(DerivedSpace::Kind k) {
  switch (k) {
    case DerivedSpace::Kind::full: return "full";
    case DerivedSpace::Kind::range_perp: return "range_perp";
    case DerivedSpace::Kind::kernel: return "kernel";
  }
  return "?";
}

namespace {

/// Tensor a fiber basis B with identities on the coefficient spaces.
void embed_fiber(DerivedSpace& ds) {
  const auto& comps = ds.ambient->components();
  const QMatrix& b = ds.fiber_basis;
  QMatrix m = inverse(b.transpose() * b) * b.transpose();
  std::vector<int> offset(b.cols() + 1, 0), lead(b.cols(), -1);
  for (int c = 0; c < b.cols(); ++c) {
    for (int i = 0; i < b.rows(); ++i) {
      if (is_zero(b(i, c))) continue;
      if (lead[c] < 0) {
        lead[c] = i;
        continue;
      }
      for (std::size_t h = 0; h < comps[i].fibers.size(); ++h)
        if (comps[i].fibers[h]->key != comps[lead[c]].fibers[h]->key)
          throw InternalError("derived fiber basis mixes components with different coefficient spaces");
    }
    if (lead[c] < 0) throw InternalError("zero column in a fiber basis");
    offset[c + 1] = offset[c] + comps[lead[c]].dim;
  }
  BlockAssembler<Rational> e(ds.ambient->dim(), offset.back()), ei(offset.back(), ds.ambient->dim());
  for (int c = 0; c < b.cols(); ++c) {
    const int dim = comps[lead[c]].dim;
    for (int i = 0; i < b.rows(); ++i) {
      if (!is_zero(b(i, c)))
        for (int x = 0; x < dim; ++x) e.add(comps[i].offset + x, offset[c] + x, b(i, c));
      if (!is_zero(m(c, i))) {
        if (comps[i].dim != dim) throw InternalError("left inverse couples components of different size");
        for (int x = 0; x < dim; ++x) ei.add(offset[c] + x, comps[i].offset + x, m(c, i));
      }
    }
  }
  ds.embedding = e.finish();
  ds.left_inverse = ei.finish();
}

DerivedSpace derived_space(const BggDiagram& g, int i) {
  DerivedSpace ds;
  ds.index = i;
  const int n = g.n, J = g.J;
  if (i < J) {
    ds.ambient = g.top[i];
    if (i == 0) {
      ds.kind = DerivedSpace::Kind::full;
      ds.fiber_basis = QMatrix::identity(int(ds.ambient->components().size()));
    } else {
      ds.kind = DerivedSpace::Kind::range_perp;
      ds.fiber_basis = nullspace(s_matrix(i - 1, J, n).matrix.transpose());
    }
  } else {
    ds.ambient = g.bottom[i];
    QMatrix s = s_matrix(i, J, n).matrix;
    if (s.rows() == 0) {
      ds.kind = DerivedSpace::Kind::full;
      ds.fiber_basis = QMatrix::identity(int(ds.ambient->components().size()));
    } else {
      ds.kind = DerivedSpace::Kind::kernel;
      ds.fiber_basis = nullspace(s);
    }
  }
  embed_fiber(ds);
  return ds;
}

}  // namespace

bool BggComplex::is_complex() const {
  for (bool b : composition_zero)
    if (!b) return false;
  return true;
}

BggComplex derive_complex(const BggDiagram& g) {
  if (!g.verified()) throw InvalidArgument("diagram failed verification; no derived complex");
  BggComplex c;
  c.n = g.n;
  c.J = g.J;
  c.spaces.resize(g.n + 1);
  parallel_for(g.n + 1, [&](int i) { c.spaces[i] = derived_space(g, i); });
  c.operators.resize(g.n);
  parallel_for(g.n, [&](int i) {
    const DerivedSpace& from = c.spaces[i];
    const DerivedSpace& to = c.spaces[i + 1];
    QSparse ambient_map;
    if (i < g.J - 1)
      ambient_map = g.d_top[i].matrix;
    else if (i == g.J - 1)
      ambient_map = g.d_bottom[i].matrix * (g.S_inverse * g.d_top[i].matrix);
    else
      ambient_map = g.d_bottom[i].matrix;
    c.operators[i] = to.left_inverse * (ambient_map * from.embedding);
    // The left inverse is exact only on ran(embedding); the image must land there.
    if (i >= g.J - 1 && !(to.embedding * c.operators[i] == ambient_map * from.embedding))
      throw InternalError("derived operator " + std::to_string(i) + " leaves the kernel of S");
  });
  for (int i = 0; i + 2 <= g.n; ++i) c.composition_zero.push_back((c.operators[i + 1] * c.operators[i]).is_zero_matrix());
  return c;
}

std::string to_string(Arithmetic a) { return a == Arithmetic::exact ? "exact" : "float"; }

Arithmetic parse_arithmetic(const std::string& s) {
  if (s == "exact") return Arithmetic::exact;
  if (s == "float") return Arithmetic::floating;
  throw InvalidArgument("arithmetic must be 'exact' or 'float', got '" + s + "'");
}

SequenceCohomology sequence_cohomology(const std::vector<int>& dims, const std::vector<const QSparse*>& maps,
                                       ArithmeticMode mode, std::vector<std::string>* indeterminate,
                                       const std::string& label) {
  SequenceCohomology out;
  out.dims = dims;
  out.ranks.assign(maps.size(), 0);
  std::vector<char> flagged(maps.size(), 0);
  parallel_for(int(maps.size()), [&](int i) {
    const QSparse& m = *maps[i];
    if (m.rows() == 0 || m.cols() == 0 || m.nnz() == 0) return;
    if (mode.kind == Arithmetic::exact) {
      out.ranks[i] = exact_rank(m);
    } else {
      FloatRank fr = float_rank(to_double(m), mode.tol);
      out.ranks[i] = fr.rank;
      flagged[i] = fr.indeterminate;
    }
  });
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (flagged[i] && indeterminate) indeterminate->push_back(label + std::to_string(i));
  for (std::size_t i = 0; i < dims.size(); ++i) {
    int h = dims[i];
    if (i < out.ranks.size()) h -= out.ranks[i];
    if (i > 0) h -= out.ranks[i - 1];
    out.h.push_back(h);
  }
  return out;
}

bool CohomologyReport::bound_holds() const {
  for (bool b : bound_ok)
    if (!b) return false;
  return true;
}

CohomologyReport cohomology(const BggDiagram& g, const BggComplex& c, ArithmeticMode mode) {
  CohomologyReport r;
  r.mode = mode;
  std::vector<int> dims;
  std::vector<const QSparse*> maps;
  for (const auto& s : c.spaces) dims.push_back(s.dim());
  for (const auto& m : c.operators) maps.push_back(&m);
  r.derived = sequence_cohomology(dims, maps, mode, &r.indeterminate_operators, "D_");

  auto row = [&](const std::vector<TensorSpaceHandle>& spaces, const std::vector<LinearMap>& ds,
                 const std::string& label) {
    std::vector<int> rd;
    std::vector<const QSparse*> rm;
    for (const auto& s : spaces) rd.push_back(s->dim());
    for (const auto& d : ds) rm.push_back(&d.matrix);
    return sequence_cohomology(rd, rm, mode, &r.indeterminate_operators, label);
  };
  r.top_row = row(g.top, g.d_top, "d_top_");
  r.bottom_row = row(g.bottom, g.d_bottom, "d_bot_");
  r.indeterminate = !r.indeterminate_operators.empty();

  long euler_dims = 0, euler_h = 0;
  for (int i = 0; i <= g.n; ++i) {
    const int b = r.top_row.h[i] + r.bottom_row.h[i];
    r.bound.push_back(b);
    r.bound_ok.push_back(r.derived.h[i] <= b);
    euler_dims += (i % 2 ? -1 : 1) * long(r.derived.dims[i]);
    euler_h += (i % 2 ? -1 : 1) * long(r.derived.h[i]);
  }
  r.euler_ok = euler_dims == euler_h;
  r.equality_at_zero = r.derived.h[0] == r.bound[0];
  r.rows_expected = true;
  for (int i = 0; i <= g.n; ++i) {
    const int et = i == 0 ? int(binomial(g.n, g.J - 1)) : 0;
    const int eb = i == 0 ? int(binomial(g.n, g.J)) : 0;
    if (r.top_row.h[i] != et || r.bottom_row.h[i] != eb) r.rows_expected = false;
  }
  return r;
}

namespace {

std::vector<Rational> kron_vectors(const std::vector<std::vector<Rational>>& parts) {
  std::vector<Rational> out{Rational(1)};
  for (const auto& p : parts) {
    std::vector<Rational> next;
    next.reserve(out.size() * p.size());
    for (const auto& a : out)
      for (const auto& b : p) next.push_back(a * b);
    out = std::move(next);
  }
  return out;
}

/// Coefficients of x_dir (or of 1 when dir < 0) in the component's tensor space.
std::vector<Rational> monomial_coefficients(const FormComponent& c, int dir) {
  std::vector<std::vector<Rational>> parts;
  for (std::size_t h = 0; h < c.fibers.size(); ++h) {
    Polynomial f = int(h) == dir ? Polynomial({0, 1}) : Polynomial::constant(1);
    parts.push_back(canonical_interp_1d(*c.fibers[h], Func1D::polynomial(f)));
  }
  return kron_vectors(parts);
}

}  // namespace

std::vector<std::vector<Rational>> affine_kernel_witnesses(const BggDiagram& g) {
  const auto& space = *g.top[0];
  std::vector<std::vector<Rational>> out;
  for (const auto& tau : enumerate_combinations(g.J - 1, g.n)) {
    std::vector<Rational> v(space.dim(), Rational(0));
    const auto& c = space.components()[space.component_index({g.n, {}}, tau)];
    auto coeffs = monomial_coefficients(c, -1);
    for (int e = 0; e < c.dim; ++e) v[c.offset + e] = coeffs[e];
    out.push_back(std::move(v));
  }
  for (const auto& rho : enumerate_combinations(g.J, g.n)) {
    std::vector<Rational> v(space.dim(), Rational(0));
    for (int j = 0; j < g.J; ++j) {
      Combination rest = rho;
      rest.entries.erase(rest.entries.begin() + j);
      const auto& c = space.components()[space.component_index({g.n, {}}, rest)];
      auto coeffs = monomial_coefficients(c, rho.entries[j] - 1);
      const Rational sign(j % 2 ? -1 : 1);
      for (int e = 0; e < c.dim; ++e) v[c.offset + e] += sign * coeffs[e];
    }
    out.push_back(std::move(v));
  }
  return out;
}

WitnessCheck check_kernel_witnesses(const BggDiagram& g, const BggComplex& c) {
  WitnessCheck w;
  auto vs = affine_kernel_witnesses(g);
  w.count = int(vs.size());
  w.all_in_kernel = true;
  const DerivedSpace& y0 = c.spaces[0];
  QMatrix stacked(int(vs.size()), y0.dim());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    // Υ^0 is the whole of Λ^{0,J-1}, so ambient coefficients are coordinates.
    auto coords = y0.left_inverse.apply(vs[i]);
    if (!(y0.embedding.apply(coords) == vs[i])) w.all_in_kernel = false;
    auto image = c.operators.empty() ? std::vector<Rational>() : c.operators[0].apply(coords);
    for (const auto& x : image)
      if (!is_zero(x)) w.all_in_kernel = false;
    for (int j = 0; j < y0.dim(); ++j) stacked(int(i), j) = coords[j];
  }
  w.independent = rank(stacked);
  return w;
}

PresetName parse_preset(const std::string& s) {
  static const std::map<std::string, PresetName> names = {
      {"hessian2d", PresetName::hessian2d},       {"stress2d", PresetName::stress2d},
      {"stress2d_rotated", PresetName::stress2d_rotated}, {"hessian3d", PresetName::hessian3d},
      {"elasticity3d", PresetName::elasticity3d}, {"divdiv3d", PresetName::divdiv3d}};
  auto it = names.find(s);
  if (it == names.end()) throw InvalidArgument("unknown preset '" + s + "'");
  return it->second;
}

std::string to_string(PresetName p) {
  switch (p) {
    case PresetName::hessian2d: return "hessian2d";
    case PresetName::stress2d: return "stress2d";
    case PresetName::stress2d_rotated: return "stress2d_rotated";
    case PresetName::hessian3d: return "hessian3d";
    case PresetName::elasticity3d: return "elasticity3d";
    case PresetName::divdiv3d: return "divdiv3d";
  }
  return "?";
}

PresetInfo preset_info(PresetName p) {
  switch (p) {
    case PresetName::hessian2d: return {p, 2, 1, ProxyConvention::standard, {"hess", "rot"}};
    case PresetName::stress2d: return {p, 2, 1, ProxyConvention::rotated2d, {"curl curl", "div"}};
    case PresetName::stress2d_rotated: return {p, 2, 1, ProxyConvention::standard, {"hess", "rot"}};
    case PresetName::hessian3d: return {p, 3, 1, ProxyConvention::standard, {"hess", "curl", "div"}};
    case PresetName::elasticity3d: return {p, 3, 2, ProxyConvention::standard, {"def", "inc", "div"}};
    case PresetName::divdiv3d: return {p, 3, 3, ProxyConvention::standard, {"dev grad", "sym curl", "div div"}};
  }
  throw InternalError("unhandled preset");
}

void check_preset_params(PresetName p, const TensorParams& params) {
  const PresetInfo info = preset_info(p);
  const std::string name = to_string(p);
  if (params.n != info.n)
    throw InvalidArgument(name + " requires n = " + std::to_string(info.n) + ", got " + std::to_string(params.n));
  for (int h = 0; h < params.n; ++h) {
    const Params1D& d = params.dirs[h];
    const std::string where = name + ", direction " + std::to_string(h + 1) + ": ";
    if (d.p < 2) throw InvalidArgument(where + "degree p >= 2 required for the second derived space");
    if (params.family == Family::spline) {
      for (int r : d.interior_regularity())
        if (r < 1) throw InvalidArgument(where + "spline regularity r >= 1 required (second derivatives in L2)");
    } else {
      if (d.r < 1) throw InvalidArgument(where + "finite elements require r >= 1");
      if (d.p < 2 * d.r + 1) throw InvalidArgument(where + "finite elements require p >= 2r + 1");
      if (p == PresetName::divdiv3d && d.r != 1) throw InvalidArgument(where + "the divdiv element family uses r = 1");
    }
  }
}

std::vector<SpaceTable> space_tables(const BggComplex& c, ProxyConvention conv) {
  std::vector<SpaceTable> out;
  for (const auto& s : c.spaces) {
    SpaceTable t;
    t.index = s.index;
    t.k = s.ambient->k();
    t.l = s.ambient->l();
    t.kind = to_string(s.kind);
    if (c.n == 2 || c.n == 3) {
      t.entries = proxy_table(*s.ambient, conv);
    } else {
      std::vector<std::string> row;
      for (const auto& comp : s.ambient->components()) row.push_back(fiber_label(*s.ambient, comp));
      t.entries.push_back(row);
    }
    out.push_back(std::move(t));
  }
  return out;
}

PresetResult preset(PresetName p, const TensorParams& params) {
  check_preset_params(p, params);
  PresetResult r;
  r.info = preset_info(p);
  r.diagram = build_diagram(params, r.info.J);
  r.complex = derive_complex(r.diagram);
  r.complex.name = to_string(p);
  r.tables = space_tables(r.complex, r.info.convention);
  return r;
}

}  // namespace bgg
