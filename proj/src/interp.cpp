#include "bggforge/interp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <random>
#include <tuple>

#include "bggforge/errors.hpp"

namespace bgg {

bool SampleForm::exact() const {
  for (const auto& t : terms)
    for (const auto& f : t.factors)
      if (!f.exact()) return false;
  return true;
}

SampleForm SampleForm::d() const {
  SampleForm out{n, k + 1, l, {}};
  if (k + 1 > n) throw InvalidArgument("exterior derivative of a top-degree form");
  for (const auto& t : terms)
    for (int h = 1; h <= n; ++h) {
      WedgeResult w = wedge_front(h, t.sigma);
      if (w.sign == 0) continue;
      RankOneTerm dt = t;
      dt.sigma = w.result;
      dt.scale = t.scale * w.sign;
      dt.factors[h - 1] = t.factors[h - 1].derivative();
      out.terms.push_back(std::move(dt));
    }
  return out;
}

SampleForm SampleForm::apply_alt(const QMatrix& alt_map, int k2, int l2) const {
  AltSpace src(k, l, n), dst(k2, l2, n);
  if (alt_map.rows() != dst.dim() || alt_map.cols() != src.dim()) throw InvalidArgument("algebraic map size mismatch");
  SampleForm out{n, k2, l2, {}};
  for (const auto& t : terms) {
    const int col = src.index_of(t.sigma, t.tau);
    for (int row = 0; row < alt_map.rows(); ++row) {
      if (is_zero(alt_map(row, col))) continue;
      RankOneTerm nt = t;
      nt.sigma = dst[row].sigma;
      nt.tau = dst[row].tau;
      nt.scale = t.scale * alt_map(row, col);
      out.terms.push_back(std::move(nt));
    }
  }
  return out;
}

InterpOperator::InterpOperator(TensorSpaceHandle target, NodeSet set) : target_(std::move(target)) {
  std::map<std::tuple<int, int, int>, std::shared_ptr<const Interp1D>> cache;
  const auto& params = target_->params();
  for (const auto& c : target_->components()) {
    std::vector<std::shared_ptr<const Interp1D>> row;
    for (int h = 0; h < target_->n(); ++h) {
      auto key = std::make_tuple(h, c.s.bits[h], c.t.bits[h]);
      auto it = cache.find(key);
      if (it == cache.end()) {
        auto op = std::make_shared<const Interp1D>(interp_1d(params.dirs[h], c.s.bits[h], c.t.bits[h], set));
        if (op->target->key != c.fibers[h]->key) throw InternalError("1D interpolant targets the wrong fiber space");
        it = cache.emplace(key, std::move(op)).first;
      }
      row.push_back(it->second);
    }
    fibers_.push_back(std::move(row));
  }
}

const Interp1D& InterpOperator::fiber(int component, int direction) const { return *fibers_[component][direction]; }

namespace {

template <class T>
std::vector<T> kron_all(const std::vector<std::vector<T>>& parts) {
  std::vector<T> out{T(1)};
  for (const auto& p : parts) {
    std::vector<T> next;
    next.reserve(out.size() * p.size());
    for (const auto& a : out)
      for (const auto& b : p) next.push_back(a * b);
    out = std::move(next);
  }
  return out;
}

bool matches(const TensorFormSpace& s, const SampleForm& u) { return u.n == s.n() && u.k == s.k() && u.l == s.l(); }

}  // namespace

std::vector<Rational> InterpOperator::apply(const SampleForm& u) const {
  std::vector<Rational> out(target_->dim(), Rational(0));
  if (!matches(*target_, u)) return out;
  for (const auto& t : u.terms) {
    const int c = target_->component_index(t.sigma, t.tau);
    const auto& comp = target_->components()[c];
    std::vector<std::vector<Rational>> parts;
    for (int h = 0; h < u.n; ++h) parts.push_back(fibers_[c][h]->apply(t.factors[h]));
    auto v = kron_all(parts);
    for (int e = 0; e < comp.dim; ++e) out[comp.offset + e] += t.scale * v[e];
  }
  return out;
}

std::vector<double> InterpOperator::apply_float(const SampleForm& u) const {
  std::vector<double> out(target_->dim(), 0.0);
  if (!matches(*target_, u)) return out;
  for (const auto& t : u.terms) {
    const int c = target_->component_index(t.sigma, t.tau);
    const auto& comp = target_->components()[c];
    std::vector<std::vector<double>> parts;
    for (int h = 0; h < u.n; ++h) parts.push_back(fibers_[c][h]->apply_float(t.factors[h]));
    auto v = kron_all(parts);
    const double s = t.scale.get_d();
    for (int e = 0; e < comp.dim; ++e) out[comp.offset + e] += s * v[e];
  }
  return out;
}

std::vector<Rational> InterpOperator::apply(const std::vector<SampleForm>& parts) const {
  std::vector<Rational> out(target_->dim(), Rational(0));
  for (const auto& p : parts) {
    auto v = apply(p);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] += v[i];
  }
  return out;
}

InterpOperator make_interp(const TensorSpaceHandle& space, NodeSet set, InterpVariant variant) {
  if (variant == InterpVariant::averaged)
    throw Unsupported("averaged quasi-interpolation with weighted node functionals is not available");
  return InterpOperator(space, set);
}

QSparse tensor_gram(const TensorFormSpace& space) {
  std::map<std::string, QSparse> grams;
  BlockAssembler<Rational> out(space.dim(), space.dim());
  for (const auto& c : space.components()) {
    QSparse g = QSparse::identity(1);
    for (const auto& f : c.fibers) {
      auto it = grams.find(f->key);
      if (it == grams.end()) it = grams.emplace(f->key, QSparse::from_dense(gram_1d(*f))).first;
      g = kron(g, it->second);
    }
    out.add_block(c.offset, c.offset, g);
  }
  return out.finish();
}

namespace {

double inner_1d(const Func1D& a, const Func1D& b) {
  if (a.exact() && b.exact()) return integrate_product(a.as_piecewise(), b.as_piecewise()).get_d();
  std::vector<Rational> breaks = uniform_breakpoints(16);
  if (a.exact()) breaks = merge_breaks(breaks, a.as_piecewise().breaks());
  if (b.exact()) breaks = merge_breaks(breaks, b.as_piecewise().breaks());
  double sum = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i].get_d(), hi = breaks[i + 1].get_d();
    GaussRule g = gauss_legendre(12, lo, hi);
    for (std::size_t q = 0; q < g.nodes.size(); ++q) {
      // Evaluate piecewise factors from the interior of the cell.
      const double x = g.nodes[q];
      sum += g.weights[q] * a.eval(x) * b.eval(x);
    }
  }
  return sum;
}

double quadratic_form(const QSparse& g, const std::vector<double>& r) {
  double s = 0;
  for (int i = 0; i < g.rows(); ++i)
    for (std::size_t k = g.row_begin(i); k < g.row_end(i); ++k) s += r[i] * g.value_at(k).get_d() * r[g.col_at(k)];
  return s;
}

}  // namespace

double sample_l2_norm(const SampleForm& u) {
  double total = 0;
  for (std::size_t a = 0; a < u.terms.size(); ++a)
    for (std::size_t b = 0; b < u.terms.size(); ++b) {
      const auto& ta = u.terms[a];
      const auto& tb = u.terms[b];
      if (!(ta.sigma == tb.sigma) || !(ta.tau == tb.tau)) continue;
      double prod = Rational(ta.scale * tb.scale).get_d();
      for (int h = 0; h < u.n && prod != 0; ++h) prod *= inner_1d(ta.factors[h], tb.factors[h]);
      total += prod;
    }
  return std::sqrt(std::max(total, 0.0));
}

namespace {

Residual make_residual(const TensorFormSpace& space, const SampleForm& u, ArithmeticMode mode,
                       const std::vector<Rational>* exact_r, const std::vector<double>* float_r) {
  Residual res;
  res.exact_mode = mode.kind == Arithmetic::exact;
  std::vector<double> r;
  if (exact_r) {
    res.exact_zero = true;
    for (const auto& x : *exact_r) {
      if (!is_zero(x)) res.exact_zero = false;
      r.push_back(x.get_d());
    }
  } else {
    r = *float_r;
  }
  res.l2 = std::sqrt(std::max(quadratic_form(tensor_gram(space), r), 0.0));
  const double norm = sample_l2_norm(u);
  res.relative = norm > 0 ? res.l2 / norm : res.l2;
  return res;
}

void require_mode(const SampleForm& u, ArithmeticMode mode) {
  if (mode.kind == Arithmetic::exact && !u.exact())
    throw InvalidArgument("trigonometric samples require float arithmetic");
}

std::vector<double> apply_float(const QSparse& m, const std::vector<double>& x) {
  std::vector<double> y(m.rows(), 0.0);
  for (int i = 0; i < m.rows(); ++i)
    for (std::size_t k = m.row_begin(i); k < m.row_end(i); ++k) y[i] += m.value_at(k).get_d() * x[m.col_at(k)];
  return y;
}

/// Residual of A π_src u − π_dst v, v the image of u under the same map.
Residual map_residual(const QSparse& a, const InterpOperator& src, const InterpOperator& dst, const SampleForm& u,
                      const SampleForm& v, ArithmeticMode mode) {
  if (mode.kind == Arithmetic::exact) {
    auto lhs = a.apply(src.apply(u));
    auto rhs = dst.apply(v);
    for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] -= rhs[i];
    return make_residual(*dst.target(), u, mode, &lhs, nullptr);
  }
  auto lhs = apply_float(a, src.apply_float(u));
  auto rhs = dst.apply_float(v);
  for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] -= rhs[i];
  return make_residual(*dst.target(), u, mode, nullptr, &lhs);
}

}  // namespace

Residual check_commute_d(const TensorParams& params, const SampleForm& u, ArithmeticMode mode, NodeSet set) {
  require_mode(u, mode);
  auto src = make_tensor_space(params, u.k, u.l);
  auto dst = make_tensor_space(params, u.k + 1, u.l);
  LinearMap d = ext_derivative(src, dst);
  return map_residual(d.matrix, make_interp(src, set), make_interp(dst, set), u, u.d(), mode);
}

Residual check_commute_S(const TensorParams& params, const SampleForm& u, ArithmeticMode mode, NodeSet set) {
  require_mode(u, mode);
  auto src = make_tensor_space(params, u.k, u.l);
  auto dst = make_tensor_space(params, u.k + 1, u.l - 1);
  LinearMap s = s_operator(src, dst);
  SampleForm su = u.apply_alt(s_matrix(u.k, u.l, u.n).matrix, u.k + 1, u.l - 1);
  return map_residual(s.matrix, make_interp(src, set), make_interp(dst, set), u, su, mode);
}

QMatrix fiber_projector(int k, int l, int n) {
  AltShape shape{k, l, n};
  QMatrix id = QMatrix::identity(shape.dim());
  if (k < 1 || l + 1 > n) return id;
  QMatrix b = s_matrix(k - 1, l + 1, n).matrix;
  QMatrix r = b;
  std::vector<int> pivots = rref(r);
  if (pivots.empty()) return id;
  QMatrix basis = b.col_block(pivots);
  return id - basis * inverse(basis.transpose() * basis) * basis.transpose();
}

Residual check_commute_projection(const TensorParams& params, const SampleForm& u, ArithmeticMode mode, NodeSet set) {
  require_mode(u, mode);
  auto space = make_tensor_space(params, u.k, u.l);
  QMatrix p = fiber_projector(u.k, u.l, u.n);
  QSparse pp = fiber_operator(*space, p, *space);
  InterpOperator pi = make_interp(space, set);
  return map_residual(pp, pi, pi, u, u.apply_alt(p, u.k, u.l), mode);
}

SpaceHandle norm_ambient(const Interp1D& op) {
  const Space1D& t = *op.target;
  std::vector<Rational> breaks = t.breakpoints;
  int degree = t.degree + 1;
  int max_order = -1;
  for (const auto& f : op.functionals) {
    for (const auto& a : f.moments) {
      breaks = merge_breaks(breaks, a.weight.breaks());
      degree = std::max(degree, a.weight.max_degree());
    }
    for (const auto& a : f.points) max_order = std::max(max_order, a.order);
  }
  if (max_order < 0) return make_spline_space(degree, breaks, -1);
  degree = std::max(degree, max_order + 1);
  std::vector<Rational> fine;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    fine.push_back(breaks[i]);
    fine.push_back((breaks[i] + breaks[i + 1]) / 2);
  }
  fine.push_back(breaks.back());
  return make_spline_space(degree, fine, degree - 1);
}

double operator_norm_1d(const Interp1D& op) {
  const Space1D& t = *op.target;
  auto ambient = norm_ambient(op);
  QMatrix m = op.matrix_on(*ambient);
  QMatrix a = m.transpose() * gram_1d(t) * m;
  QMatrix b = gram_1d(*ambient);
  const int dim = a.rows();
  Eigen::MatrixXd ea(dim, dim), eb(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      ea(i, j) = a(i, j).get_d();
      eb(i, j) = b(i, j).get_d();
    }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(ea, eb, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InternalError("generalized eigenvalue solve failed");
  return std::sqrt(std::max(solver.eigenvalues().maxCoeff(), 0.0));
}

double operator_norm(const InterpOperator& op) {
  std::map<const Interp1D*, double> cache;
  double worst = 0;
  const auto& comps = op.target()->components();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    double prod = 1;
    for (int h = 0; h < op.target()->n(); ++h) {
      const Interp1D* f = &op.fiber(int(c), h);
      auto it = cache.find(f);
      if (it == cache.end()) it = cache.emplace(f, operator_norm_1d(*f)).first;
      prod *= it->second;
    }
    worst = std::max(worst, prod);
  }
  return worst;
}

namespace {

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  return Rational(num(rng)) / den(rng);
}

Rational random_nonzero(std::mt19937& rng) {
  Rational r = 0;
  while (r == 0) r = random_rational(rng);
  return r;
}

template <class Factor>
SampleForm build_sample(int n, int k, int l, int terms, std::mt19937& rng, Factor make_factor) {
  SampleForm u{n, k, l, {}};
  AltSpace alt(k, l, n);
  for (const auto& b : alt.basis())
    for (int t = 0; t < terms; ++t) {
      RankOneTerm term;
      term.sigma = b.sigma;
      term.tau = b.tau;
      term.scale = random_nonzero(rng);
      for (int h = 0; h < n; ++h) term.factors.push_back(make_factor(rng));
      u.terms.push_back(std::move(term));
    }
  return u;
}

}  // namespace

SampleForm random_polynomial_sample(int n, int k, int l, int degree, unsigned seed, int terms) {
  std::mt19937 rng(seed);
  return build_sample(n, k, l, terms, rng, [degree](std::mt19937& g) {
    std::vector<Rational> c;
    for (int i = 0; i <= degree; ++i) c.push_back(random_rational(g));
    return Func1D::polynomial(Polynomial(c));
  });
}

SampleForm trig_sample(int n, int k, int l, unsigned seed, int terms) {
  std::mt19937 rng(seed);
  return build_sample(n, k, l, terms, rng, [](std::mt19937& g) {
    std::uniform_real_distribution<double> amp(0.5, 2.0), omega(0.5, 4.0), phase(0.0, 3.0);
    const double a = amp(g), w = omega(g), p = phase(g);
    return Func1D::trig(a, w, p);
  });
}

DiscreteSample sample_from_space(const TensorFormSpace& space, unsigned seed, int terms) {
  std::mt19937 rng(seed);
  DiscreteSample out;
  out.form = {space.n(), space.k(), space.l(), {}};
  out.coeffs.assign(space.dim(), Rational(0));
  for (const auto& c : space.components())
    for (int t = 0; t < terms; ++t) {
      RankOneTerm term;
      term.sigma = c.sigma;
      term.tau = c.tau;
      term.scale = random_nonzero(rng);
      int flat = 0;
      for (const auto& f : c.fibers) {
        const int j = int(rng() % unsigned(f->dim));
        term.factors.push_back(Func1D::piecewise(f->basis[j]));
        flat = flat * f->dim + j;
      }
      out.coeffs[c.offset + flat] += term.scale;
      out.form.terms.push_back(std::move(term));
    }
  return out;
}

std::vector<SuiteEntry> run_interp_suite(const TensorParams& params, int J, unsigned seed, double tol) {
  const int n = params.n;
  int degree = 0;
  for (const auto& d : params.dirs) degree = std::max(degree, d.p + 2);
  const ArithmeticMode exact{Arithmetic::exact, tol}, flt{Arithmetic::floating, tol};
  std::vector<SuiteEntry> out;
  auto add = [&](std::string check, std::string sample, int k, int l, Residual r) {
    SuiteEntry e{std::move(check), std::move(sample), k, l, r, r.passes(tol)};
    out.push_back(std::move(e));
  };
  unsigned s = seed;
  for (int l : {J - 1, J}) {
    if (l < 0 || l > n) continue;
    for (int k = 0; k <= n; ++k) {
      SampleForm poly = random_polynomial_sample(n, k, l, degree, s++);
      SampleForm trig = trig_sample(n, k, l, s++);
      if (k < n) {
        add("commute-d", "polynomial", k, l, check_commute_d(params, poly, exact));
        add("commute-d", "trig", k, l, check_commute_d(params, trig, flt));
      }
      if (k < n && l >= 1) {
        add("commute-S", "polynomial", k, l, check_commute_S(params, poly, exact));
        add("commute-S", "trig", k, l, check_commute_S(params, trig, flt));
      }
      if (k >= 1 && l + 1 <= n && k <= l) {
        add("commute-P", "polynomial", k, l, check_commute_projection(params, poly, exact));
        add("commute-P", "trig", k, l, check_commute_projection(params, trig, flt));
      }
      auto space = make_tensor_space(params, k, l);
      InterpOperator pi = make_interp(space);
      {
        DiscreteSample ds = sample_from_space(*space, s++);
        auto got = pi.apply(ds.form);
        for (std::size_t i = 0; i < got.size(); ++i) got[i] -= ds.coeffs[i];
        add("projection", "discrete", k, l, make_residual(*space, ds.form, exact, &got, nullptr));
      }
      {
        // A form of another bidegree is invisible to π^{k,l}.
        const int other_l = l == 0 ? 1 : l - 1;
        SampleForm other = random_polynomial_sample(n, k, other_l, degree, s++);
        auto got = pi.apply(std::vector<SampleForm>{poly, other});
        auto want = pi.apply(poly);
        for (std::size_t i = 0; i < got.size(); ++i) got[i] -= want[i];
        add("zero-extension", "mixed", k, l, make_residual(*space, poly, exact, &got, nullptr));
      }
      if (params.family == Family::finite_element) {
        InterpOperator pc = make_interp(space, NodeSet::commuting);
        auto a = pi.apply(poly);
        auto b = pc.apply(poly);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
        add("node-sets", "polynomial", k, l, make_residual(*space, poly, exact, &a, nullptr));
      }
    }
  }
  return out;
}

}  // namespace bgg
