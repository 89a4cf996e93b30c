#include "bggforge/spaces_1d.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "bggforge/errors.hpp"

namespace bgg {

std::string to_string(Family f) { return f == Family::spline ? "spline" : "fe"; }

std::string to_string(FeKind k) {
  switch (k) {
    case FeKind::W00: return "W00";
    case FeKind::W10: return "W10";
    case FeKind::W01: return "W01";
    case FeKind::W11: return "W11";
  }
  return "?";
}

namespace {

std::mutex cache_mutex;
std::map<std::string, SpaceHandle>& cache() {
  static std::map<std::string, SpaceHandle> c;
  return c;
}

template <class Build>
SpaceHandle cached(const std::string& key, Build build) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  auto s = std::make_shared<Space1D>(build());
  s->key = key;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto [it, inserted] = cache().emplace(key, s);
  return it->second;
}

std::string breaks_key(const std::vector<Rational>& b) {
  std::string s;
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + to_string(b[i]);
  return s;
}

void check_breaks(const std::vector<Rational>& b) {
  if (b.size() < 2) throw InvalidArgument("at least two breakpoints are required");
  if (b.front() != 0 || b.back() != 1) throw InvalidArgument("breakpoints must start at 0 and end at 1");
  for (std::size_t i = 1; i < b.size(); ++i)
    if (!(b[i - 1] < b[i])) throw InvalidArgument("breakpoints must increase strictly");
}

PiecewisePoly times_linear(const PiecewisePoly& f, const Polynomial& lin) {
  std::vector<Polynomial> pieces;
  for (const auto& p : f.pieces()) pieces.push_back(lin * p);
  return PiecewisePoly(f.breaks(), std::move(pieces));
}

PiecewisePoly on_cell(const std::vector<Rational>& breaks, int cell, const Polynomial& p) {
  PiecewisePoly w = PiecewisePoly::zero(breaks);
  w.piece(cell) = p;
  return w;
}

}  // namespace

std::vector<Rational> uniform_breakpoints(int cells) {
  if (cells < 1) throw InvalidArgument("cell count must be positive");
  std::vector<Rational> b;
  for (int i = 0; i <= cells; ++i) b.emplace_back(i, cells);
  for (auto& x : b) x.canonicalize();
  return b;
}

// ---------------------------------------------------------------- splines

SpaceHandle make_spline_space(int p, const std::vector<Rational>& breakpoints, int r) {
  std::vector<int> rv(breakpoints.size() >= 2 ? breakpoints.size() - 2 : 0, r);
  return make_spline_space(p, breakpoints, rv);
}

SpaceHandle make_spline_space(int p, const std::vector<Rational>& breaks, const std::vector<int>& r) {
  if (p < 0) throw InvalidArgument("spline degree must be nonnegative, got " + std::to_string(p));
  check_breaks(breaks);
  if (r.size() + 2 != breaks.size()) throw InvalidArgument("one regularity value per interior breakpoint required");
  for (int ri : r)
    if (ri < -1 || ri > p - 1)
      throw InvalidArgument("spline regularity must satisfy -1 <= r <= p-1 (p = " + std::to_string(p) +
                            ", r = " + std::to_string(ri) + ")");
  std::string key = "spline:p=" + std::to_string(p) + ":b=" + breaks_key(breaks) + ":r=";
  for (std::size_t i = 0; i < r.size(); ++i) key += (i ? "," : "") + std::to_string(r[i]);

  return cached(key, [&] {
    Space1D s;
    s.family = Family::spline;
    s.degree = p;
    s.breakpoints = breaks;
    s.regularity = r;
    for (int i = 0; i <= p; ++i) s.knots.push_back(breaks.front());
    for (std::size_t i = 0; i < r.size(); ++i)
      for (int m = 0; m < p - r[i]; ++m) s.knots.push_back(breaks[i + 1]);
    for (int i = 0; i <= p; ++i) s.knots.push_back(breaks.back());
    const auto& t = s.knots;
    const int nk = int(t.size());
    s.dim = nk - p - 1;

    // Cox–de Boor on piecewise polynomials over the mesh.
    std::vector<PiecewisePoly> level;
    for (int i = 0; i + 1 < nk; ++i) {
      PiecewisePoly b = PiecewisePoly::zero(breaks);
      if (t[i] < t[i + 1]) b.piece(int(std::lower_bound(breaks.begin(), breaks.end(), t[i]) - breaks.begin())) =
          Polynomial::constant(1);
      level.push_back(std::move(b));
    }
    for (int k = 1; k <= p; ++k) {
      std::vector<PiecewisePoly> next;
      for (int i = 0; i + k + 1 < nk; ++i) {
        PiecewisePoly b = PiecewisePoly::zero(breaks);
        if (t[i + k] != t[i])
          b = b + times_linear(level[i], Polynomial({-t[i] / (t[i + k] - t[i]), 1 / (t[i + k] - t[i])}));
        if (t[i + k + 1] != t[i + 1])
          b = b + times_linear(level[i + 1], Polynomial({t[i + k + 1] / (t[i + k + 1] - t[i + 1]),
                                                          -1 / (t[i + k + 1] - t[i + 1])}));
        next.push_back(std::move(b));
      }
      level = std::move(next);
    }
    s.basis = std::move(level);

    // Local L² duals: λ_i(u) is the B_i coefficient of the L² projection of
    // u|supp B_i onto the B-splines alive on supp B_i.
    const int cells = int(breaks.size()) - 1;
    for (int i = 0; i < s.dim; ++i) {
      std::vector<int> support;
      for (int c = 0; c < cells; ++c)
        if (!s.basis[i].piece(c).is_zero()) support.push_back(c);
      std::vector<int> alive;
      for (int j = std::max(0, i - p); j <= std::min(s.dim - 1, i + p); ++j)
        for (int c : support)
          if (!s.basis[j].piece(c).is_zero()) {
            alive.push_back(j);
            break;
          }
      const int m = int(alive.size());
      QMatrix g(m, m);
      for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
          Rational v = 0;
          for (int c : support)
            v += (s.basis[alive[a]].piece(c) * s.basis[alive[b]].piece(c)).integrate(breaks[c], breaks[c + 1]);
          g(a, b) = v;
          g(b, a) = v;
        }
      QMatrix ginv = inverse(g);
      const int row = int(std::find(alive.begin(), alive.end(), i) - alive.begin());
      PiecewisePoly w = PiecewisePoly::zero(breaks);
      for (int c : support)
        for (int b = 0; b < m; ++b) w.piece(c) = w.piece(c) + ginv(row, b) * s.basis[alive[b]].piece(c);
      Functional1D f;
      f.moments.push_back({Rational(1), 0, std::move(w)});
      s.dual.push_back(std::move(f));
    }
    return s;
  });
}

Rational eval_bspline(const Space1D& space, int i, const Rational& x) {
  if (space.family != Family::spline) throw InvalidArgument("eval_bspline needs a spline space");
  if (i < 0 || i >= space.dim) throw InvalidArgument("basis index out of range");
  if (x < 0 || x > 1) throw InvalidArgument("evaluation point outside [0,1]");
  const auto& t = space.knots;
  const int nk = int(t.size());
  const int p = space.degree;
  // Index of the last nonempty span, treated as closed on the right.
  int last = nk - 2;
  while (last > 0 && !(t[last] < t[last + 1])) --last;
  std::vector<Rational> b(nk - 1);
  for (int j = 0; j + 1 < nk; ++j)
    b[j] = ((t[j] <= x && x < t[j + 1]) || (j == last && x == t[j + 1])) ? 1 : 0;
  for (int k = 1; k <= p; ++k)
    for (int j = 0; j + k + 1 < nk; ++j) {
      Rational v = 0;
      if (t[j + k] != t[j]) v += (x - t[j]) / (t[j + k] - t[j]) * b[j];
      if (t[j + k + 1] != t[j + 1]) v += (t[j + k + 1] - x) / (t[j + k + 1] - t[j + 1]) * b[j + 1];
      b[j] = v;
    }
  return b[i];
}

// ---------------------------------------------------------- finite elements

FePattern fe_pattern(FeKind kind, int q, int r) {
  switch (kind) {
    case FeKind::W00: return {FePattern::Type::H00, q, r};
    case FeKind::W10: return {FePattern::Type::H10, q, r};
    case FeKind::W01: return {FePattern::Type::H00, q - 1, r - 1};
    case FeKind::W11: return {FePattern::Type::H10, q - 1, r - 1};
  }
  throw InternalError("unknown FE kind");
}

namespace {

void check_pattern(const FePattern& pat) {
  if (pat.R < 0) throw InvalidArgument("FE regularity index must be nonnegative after reduction");
  if (pat.degree() < 0) throw InvalidArgument("FE degree must be nonnegative after reduction");
  if (pat.moments() < 0)
    throw InvalidArgument(std::string("FE pattern ") + (pat.type == FePattern::Type::H00 ? "H00" : "H10") + "(" +
                          std::to_string(pat.Q) + "," + std::to_string(pat.R) +
                          ") needs more degrees of freedom than the polynomial space has (q >= 2r+1 required)");
}

Rational local_value(const NodeFunctional& nf, const std::vector<Rational>& breaks, const Polynomial& u) {
  const Rational& a = breaks[nf.cell];
  const Rational& b = breaks[nf.cell + 1];
  switch (nf.kind) {
    case NodeFunctional::Kind::point_derivative: return u.derivative(nf.order)(nf.endpoint ? b : a);
    case NodeFunctional::Kind::endpoint_sum: return u(a) + u(b);
    case NodeFunctional::Kind::legendre_moment: {
      Polynomial integrand = legendre_on(nf.index, a, b) * (nf.of_derivative ? u.derivative() : u);
      return integrand.integrate(a, b);
    }
  }
  return 0;
}

QMatrix local_vandermonde(const std::vector<NodeFunctional>& nfs, const std::vector<Rational>& breaks, int degree) {
  QMatrix v(int(nfs.size()), degree + 1);
  for (std::size_t a = 0; a < nfs.size(); ++a)
    for (int m = 0; m <= degree; ++m) v(int(a), m) = local_value(nfs[a], breaks, Polynomial::monomial(m));
  return v;
}

QMatrix checked_inverse(const QMatrix& v, int cell) {
  if (v.rows() != v.cols())
    throw UnisolvenceFailure("cell " + std::to_string(cell) + ": " + std::to_string(v.rows()) +
                             " node functionals for a polynomial space of dimension " + std::to_string(v.cols()));
  try {
    return inverse(v);
  } catch (const InvalidArgument&) {
    throw UnisolvenceFailure("cell " + std::to_string(cell) + ": node functionals are not unisolvent");
  }
}

/// Global DOF index of local functional a on cell c under the layout
/// node 0 jets, cell 0 moments, node 1 jets, ..., node N jets.
int global_index(const FePattern& pat, int cell, int a) {
  const int J = pat.jets(), M = pat.moments();
  if (a < J) return cell * (J + M) + a;
  if (a < 2 * J) return (cell + 1) * (J + M) + (a - J);
  return cell * (J + M) + J + (a - 2 * J);
}

int global_dim(const FePattern& pat, int cells) { return cells * (pat.jets() + pat.moments()) + pat.jets(); }

/// Global standard functionals; interior jets are two-sided.
std::vector<Functional1D> global_functionals(const FePattern& pat, const std::vector<Rational>& breaks) {
  const int cells = int(breaks.size()) - 1;
  std::vector<Functional1D> out(global_dim(pat, cells));
  std::vector<char> done(out.size(), 0);
  for (int c = 0; c < cells; ++c) {
    auto nfs = standard_node_functionals(pat, c);
    for (int a = 0; a < int(nfs.size()); ++a) {
      const int g = global_index(pat, c, a);
      if (done[g]) continue;
      done[g] = 1;
      Functional1D f = to_functional(nfs[a], breaks);
      for (auto& pt : f.points)
        if (pt.x != breaks.front() && pt.x != breaks.back()) pt.side = 0;
      out[g] = std::move(f);
    }
  }
  return out;
}

std::string pattern_key(const FePattern& pat, const std::vector<Rational>& breaks) {
  return std::string("fe:") + (pat.type == FePattern::Type::H00 ? "H00" : "H10") + ":Q=" + std::to_string(pat.Q) +
         ":R=" + std::to_string(pat.R) + ":b=" + breaks_key(breaks);
}

SpaceHandle make_pattern_space(const FePattern& pat, const std::vector<Rational>& breaks) {
  check_breaks(breaks);
  check_pattern(pat);
  return cached(pattern_key(pat, breaks), [&] {
    Space1D s;
    s.family = Family::finite_element;
    s.degree = pat.degree();
    s.breakpoints = breaks;
    const int cont = pat.type == FePattern::Type::H00 ? pat.R : pat.R - 1;
    s.regularity.assign(breaks.size() - 2, cont);
    s.pattern = pat;
    const int cells = int(breaks.size()) - 1;
    s.dim = global_dim(pat, cells);
    s.basis.assign(s.dim, PiecewisePoly::zero(breaks));
    for (int c = 0; c < cells; ++c) {
      auto nfs = standard_node_functionals(pat, c);
      QMatrix vinv = checked_inverse(local_vandermonde(nfs, breaks, pat.degree()), c);
      for (int a = 0; a < int(nfs.size()); ++a) {
        std::vector<Rational> coeffs(pat.degree() + 1);
        for (int m = 0; m <= pat.degree(); ++m) coeffs[m] = vinv(m, a);
        s.basis[global_index(pat, c, a)].piece(c) = Polynomial(std::move(coeffs));
      }
    }
    s.dual = global_functionals(pat, breaks);
    return s;
  });
}

}  // namespace

std::vector<NodeFunctional> standard_node_functionals(const FePattern& pat, int cell) {
  std::vector<NodeFunctional> out;
  using K = NodeFunctional::Kind;
  const bool h00 = pat.type == FePattern::Type::H00;
  const int jets = pat.jets();
  for (int end = 0; end < 2; ++end)
    for (int o = 0; o < jets; ++o) out.push_back({K::point_derivative, o, end, 0, false, cell});
  const int first = h00 ? 1 : 0;
  for (int i = 0; i < pat.moments(); ++i) out.push_back({K::legendre_moment, 0, 0, first + i, h00, cell});
  return out;
}

std::vector<NodeFunctional> commuting_node_functionals(const FePattern& pat, int cell) {
  if (pat.type != FePattern::Type::H00) throw InvalidArgument("commuting node set is defined for H00 patterns");
  using K = NodeFunctional::Kind;
  std::vector<NodeFunctional> out;
  out.push_back({K::endpoint_sum, 0, 0, 0, false, cell});
  for (int end = 0; end < 2; ++end)
    for (int o = 1; o <= pat.R; ++o) out.push_back({K::point_derivative, o, end, 0, false, cell});
  for (int i = 0; i <= pat.Q - 2 * pat.R - 1; ++i) out.push_back({K::legendre_moment, 0, 0, i, true, cell});
  return out;
}

Functional1D to_functional(const NodeFunctional& nf, const std::vector<Rational>& breaks) {
  Functional1D f;
  const Rational& a = breaks[nf.cell];
  const Rational& b = breaks[nf.cell + 1];
  switch (nf.kind) {
    case NodeFunctional::Kind::point_derivative:
      f.points.push_back({Rational(1), nf.order, nf.endpoint ? b : a, nf.endpoint ? -1 : +1});
      break;
    case NodeFunctional::Kind::endpoint_sum:
      f.points.push_back({Rational(1), 0, a, +1});
      f.points.push_back({Rational(1), 0, b, -1});
      break;
    case NodeFunctional::Kind::legendre_moment:
      f.moments.push_back({Rational(1), nf.of_derivative ? 1 : 0, on_cell(breaks, nf.cell, legendre_on(nf.index, a, b))});
      break;
  }
  return f;
}

SpaceHandle make_fe_space(FeKind kind, int q, int r, const std::vector<Rational>& breakpoints) {
  if (kind == FeKind::W00 && r < 0) throw InvalidArgument("W00 needs r >= 0");
  if ((kind == FeKind::W01 || kind == FeKind::W11) && r < 1)
    throw InvalidArgument(to_string(kind) + " needs r >= 1");
  // W01 and W10 are the same space; they differ only in their interpolation functionals.
  FePattern pat = fe_pattern(kind == FeKind::W01 ? FeKind::W10 : kind, q, r);
  check_pattern(fe_pattern(FeKind::W00, q, r));
  return make_pattern_space(pat, breakpoints);
}

SpaceHandle make_fe_space(FeKind kind, int q, int r, int cells) {
  return make_fe_space(kind, q, r, uniform_breakpoints(cells));
}

// ---------------------------------------------------------------- operators

DerivativeMap derivative_map_1d(const SpaceHandle& space, const SpaceHandle& target) {
  for (int r : space->regularity)
    if (r < 0) throw InvalidArgument("derivative of a discontinuous space is not defined");
  if (space->degree < 1) throw InvalidArgument("derivative map needs degree >= 1");
  DerivativeMap d;
  d.target = target;
  d.matrix = QMatrix(target->dim, space->dim);
  for (int j = 0; j < space->dim; ++j) {
    Func1D dj = Func1D::piecewise(space->basis[j].derivative());
    for (int i = 0; i < target->dim; ++i) d.matrix(i, j) = apply_exact(target->dual[i], dj);
  }
  return d;
}

DerivativeMap derivative_map_1d(const SpaceHandle& space) {
  if (space->family == Family::spline) {
    std::vector<int> r = space->regularity;
    for (int& x : r) x -= 1;
    if (space->degree < 1) throw InvalidArgument("derivative map needs degree >= 1");
    for (int x : space->regularity)
      if (x < 0) throw InvalidArgument("derivative of a discontinuous space is not defined");
    return derivative_map_1d(space, make_spline_space(space->degree - 1, space->breakpoints, r));
  }
  const FePattern& pat = space->pattern;
  FePattern next = pat.type == FePattern::Type::H00 ? FePattern{FePattern::Type::H10, pat.Q, pat.R}
                                                    : FePattern{FePattern::Type::H10, pat.Q - 1, pat.R - 1};
  return derivative_map_1d(space, make_pattern_space(next, space->breakpoints));
}

QMatrix gram_1d(const Space1D& space) {
  QMatrix g(space.dim, space.dim);
  for (int i = 0; i < space.dim; ++i)
    for (int j = i; j < space.dim; ++j) {
      g(i, j) = integrate_product(space.basis[i], space.basis[j]);
      g(j, i) = g(i, j);
    }
  return g;
}

std::vector<Rational> canonical_interp_1d(const Space1D& space, const Func1D& u) {
  std::vector<Rational> c(space.dim);
  for (int i = 0; i < space.dim; ++i) c[i] = apply_exact(space.dual[i], u);
  return c;
}

std::vector<double> canonical_interp_1d_float(const Space1D& space, const Func1D& u) {
  std::vector<double> c(space.dim);
  for (int i = 0; i < space.dim; ++i) c[i] = apply_float(space.dual[i], u);
  return c;
}

PiecewisePoly combine(const Space1D& space, const std::vector<Rational>& coeffs) {
  PiecewisePoly f = PiecewisePoly::zero(space.breakpoints);
  for (int i = 0; i < space.dim; ++i)
    if (!is_zero(coeffs[i])) f = f + coeffs[i] * space.basis[i];
  return f;
}

std::vector<int> Params1D::interior_regularity() const {
  if (!r_interior.empty()) return r_interior;
  return std::vector<int>(breaks.size() >= 2 ? breaks.size() - 2 : 0, r);
}

SpaceHandle coefficient_space(const Params1D& params, int reduction) {
  if (reduction < 0 || reduction > 2) throw InvalidArgument("index reduction must be 0, 1 or 2");
  if (params.family == Family::spline) {
    std::vector<int> r = params.interior_regularity();
    for (int& x : r) x -= reduction;
    return make_spline_space(params.p - reduction, params.breaks, r);
  }
  const int r = params.r;
  static constexpr FeKind kinds[] = {FeKind::W00, FeKind::W10, FeKind::W11};
  return make_fe_space(kinds[reduction], params.p, r, params.breaks);
}

std::vector<Rational> Interp1D::apply(const Func1D& u) const {
  std::vector<Rational> c(functionals.size());
  for (std::size_t i = 0; i < functionals.size(); ++i) c[i] = apply_exact(functionals[i], u);
  return c;
}

std::vector<double> Interp1D::apply_float(const Func1D& u) const {
  std::vector<double> c(functionals.size());
  for (std::size_t i = 0; i < functionals.size(); ++i) c[i] = bgg::apply_float(functionals[i], u);
  return c;
}

QMatrix Interp1D::matrix_on(const Space1D& from) const {
  QMatrix m(int(functionals.size()), from.dim);
  for (int j = 0; j < from.dim; ++j) {
    Func1D u = Func1D::piecewise(from.basis[j]);
    for (std::size_t i = 0; i < functionals.size(); ++i) m(int(i), j) = apply_exact(functionals[i], u);
  }
  return m;
}

Interp1D antiderivative_interp_1d(const Params1D& params, int level) {
  if (params.family != Family::spline) throw Unsupported("antiderivative quasi-interpolants are spline operators");
  if (level < 0 || level > 2) throw InvalidArgument("interpolation level must be 0, 1 or 2");
  SpaceHandle base = coefficient_space(params, 0);
  Interp1D cur{base, base->dual};
  for (int l = 1; l <= level; ++l) {
    SpaceHandle next = coefficient_space(params, l);
    QMatrix d = derivative_map_1d(cur.target, next).matrix;
    std::vector<Functional1D> transformed;
    for (const auto& f : cur.functionals) transformed.push_back(antiderivative_transform(f));
    Interp1D out{next, std::vector<Functional1D>(next->dim)};
    for (int i = 0; i < d.rows(); ++i)
      for (int j = 0; j < d.cols(); ++j)
        if (!is_zero(d(i, j))) out.functionals[i].add(transformed[j], d(i, j));
    cur = std::move(out);
  }
  return cur;
}

namespace {

/// Global standard functionals of an H00 pattern rewritten through the commuting local sets.
std::vector<Functional1D> commuting_rewrite(const FePattern& pat, const std::vector<Rational>& breaks) {
  const int cells = int(breaks.size()) - 1;
  std::vector<Functional1D> out(global_dim(pat, cells));
  std::vector<char> done(out.size(), 0);
  for (int c = 0; c < cells; ++c) {
    auto std_set = standard_node_functionals(pat, c);
    auto com_set = commuting_node_functionals(pat, c);
    QMatrix vs = local_vandermonde(std_set, breaks, pat.degree());
    QMatrix vc = local_vandermonde(com_set, breaks, pat.degree());
    QMatrix change = vs * checked_inverse(vc, c);
    for (int a = 0; a < int(std_set.size()); ++a) {
      const int g = global_index(pat, c, a);
      if (done[g]) continue;
      done[g] = 1;
      for (int b = 0; b < int(com_set.size()); ++b)
        if (!is_zero(change(a, b))) out[g].add(to_functional(com_set[b], breaks), change(a, b));
    }
  }
  return out;
}

}  // namespace

Interp1D interp_1d(const Params1D& params, int s, int t, NodeSet set) {
  if (s < 0 || s > 1 || t < 0 || t > 1) throw InvalidArgument("slot indices must be 0 or 1");
  if (params.family == Family::spline) return antiderivative_interp_1d(params, s + t);
  const int q = params.p, r = params.r;
  if (s == 0 && t == 0) {
    SpaceHandle w = make_fe_space(FeKind::W00, q, r, params.breaks);
    if (set == NodeSet::standard) return {w, w->dual};
    return {w, commuting_rewrite(w->pattern, params.breaks)};
  }
  if (s == 1 && t == 0) {
    SpaceHandle w = make_fe_space(FeKind::W10, q, r, params.breaks);
    return {w, w->dual};
  }
  if (s == 1 && t == 1) {
    SpaceHandle w = make_fe_space(FeKind::W11, q, r, params.breaks);
    return {w, w->dual};
  }
  // Π^{01}: node functionals of the (q-1, r-1) H00 pattern, expressed in the shared basis.
  SpaceHandle w = make_fe_space(FeKind::W01, q, r, params.breaks);
  FePattern pat = fe_pattern(FeKind::W01, q, r);
  check_pattern(pat);
  std::vector<Functional1D> n01 = global_functionals(pat, params.breaks);
  if (int(n01.size()) != w->dim) throw InternalError("W01 functional count differs from the space dimension");
  QMatrix pairing(w->dim, w->dim);
  for (int j = 0; j < w->dim; ++j) {
    Func1D phi = Func1D::piecewise(w->basis[j]);
    for (int i = 0; i < w->dim; ++i) pairing(i, j) = apply_exact(n01[i], phi);
  }
  QMatrix m = checked_inverse(pairing, -1);
  Interp1D out{w, std::vector<Functional1D>(w->dim)};
  for (int i = 0; i < w->dim; ++i)
    for (int k = 0; k < w->dim; ++k)
      if (!is_zero(m(i, k))) out.functionals[i].add(n01[k], m(i, k));
  return out;
}

PiecewisePoly fe_local_interpolant(const FePattern& pat, const std::vector<Rational>& breaks, const Func1D& u,
                                   NodeSet set) {
  check_breaks(breaks);
  check_pattern(pat);
  const int cells = int(breaks.size()) - 1;
  PiecewisePoly out = PiecewisePoly::zero(breaks);
  for (int c = 0; c < cells; ++c) {
    auto nfs = set == NodeSet::standard ? standard_node_functionals(pat, c) : commuting_node_functionals(pat, c);
    QMatrix vinv = checked_inverse(local_vandermonde(nfs, breaks, pat.degree()), c);
    std::vector<Rational> vals;
    for (const auto& nf : nfs) vals.push_back(apply_exact(to_functional(nf, breaks), u));
    out.piece(c) = Polynomial(vinv.apply(vals));
  }
  return out;
}

}  // namespace bgg
