#include "bggforge/tensor_complex.hpp"

#include <algorithm>
#include <map>

#include "bggforge/errors.hpp"

namespace bgg {

TensorParams TensorParams::uniform(int n, Family family, int p, int r, int cells) {
  TensorParams tp;
  tp.n = n;
  tp.family = family;
  for (int h = 0; h < n; ++h) {
    Params1D d;
    d.family = family;
    d.p = p;
    d.r = r;
    d.breaks = uniform_breakpoints(cells);
    tp.dirs.push_back(d);
  }
  return tp;
}

namespace {

std::string describe(const Combination& sigma, const Combination& tau) {
  auto list = [](const Combination& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.entries.size(); ++i) s += (i ? "," : "") + std::to_string(c.entries[i]);
    return s + ")";
  };
  return "dx^" + list(sigma) + " ⊗ dx^" + list(tau);
}

}  // namespace

TensorFormSpace::TensorFormSpace(TensorParams params, int k, int l)
    : params_(std::move(params)), k_(k), l_(l), alt_(k, l, params_.n) {
  if (int(params_.dirs.size()) != params_.n) throw InvalidArgument("one set of 1D parameters per direction required");
  for (const auto& d : params_.dirs)
    if (d.family != params_.family) throw InvalidArgument("family must be the same in every direction");
  int offset = 0;
  for (const auto& b : alt_.basis()) {
    FormComponent c;
    c.sigma = b.sigma;
    c.tau = b.tau;
    c.s = to_char_vector(b.sigma);
    c.t = to_char_vector(b.tau);
    c.offset = offset;
    c.dim = 1;
    for (int h = 0; h < params_.n; ++h) {
      try {
        c.fibers.push_back(coefficient_space(params_.dirs[h], c.reduction(h)));
      } catch (const Error& e) {
        throw InvalidArgument("space Λ^{" + std::to_string(k) + "," + std::to_string(l) + "}, component " +
                              describe(b.sigma, b.tau) + ", direction " + std::to_string(h + 1) + ": " + e.what());
      }
      c.dim *= c.fibers.back()->dim;
    }
    offset += c.dim;
    components_.push_back(std::move(c));
  }
  dim_ = offset;
}

TensorSpaceHandle make_tensor_space(const TensorParams& params, int k, int l) {
  return std::make_shared<const TensorFormSpace>(params, k, l);
}

namespace {

/// I_before ⊗ D ⊗ I_after over the fibers of one component.
QSparse directional_block(const FormComponent& from, const FormComponent& to, int h, const QMatrix& d) {
  int before = 1, after = 1;
  for (int i = 0; i < h; ++i) before *= from.fibers[i]->dim;
  for (int i = h + 1; i < int(from.fibers.size()); ++i) after *= from.fibers[i]->dim;
  for (int i = 0; i < int(from.fibers.size()); ++i)
    if (i != h && from.fibers[i]->key != to.fibers[i]->key)
      throw InternalError("fiber mismatch outside the differentiated direction");
  return kron(kron(QSparse::identity(before), QSparse::from_dense(d)), QSparse::identity(after));
}

bool valid_degrees(int k, int l, int n) { return k >= 0 && l >= 0 && k <= n && l <= n; }

}  // namespace

LinearMap ext_derivative(const TensorSpaceHandle& space) {
  if (!valid_degrees(space->k() + 1, space->l(), space->n())) return {space, nullptr, QSparse(0, space->dim())};
  return ext_derivative(space, make_tensor_space(space->params(), space->k() + 1, space->l()));
}

LinearMap ext_derivative(const TensorSpaceHandle& space, const TensorSpaceHandle& target) {
  const int n = space->n();
  if (target->k() != space->k() + 1 || target->l() != space->l() || target->n() != n)
    throw InvalidArgument("exterior derivative target must be Λ^{k+1,l}");
  std::map<std::pair<std::string, std::string>, QMatrix> cache;
  BlockAssembler<Rational> out(target->dim(), space->dim());
  for (const auto& c : space->components()) {
    for (int h = 1; h <= n; ++h) {
      WedgeResult w = wedge_front(h, c.sigma);
      if (w.sign == 0) continue;
      const auto& tc = target->components()[target->component_index(w.result, c.tau)];
      const auto& src = c.fibers[h - 1];
      const auto& dst = tc.fibers[h - 1];
      auto key = std::make_pair(src->key, dst->key);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, derivative_map_1d(src, dst).matrix).first;
      out.add_block(tc.offset, c.offset, directional_block(c, tc, h - 1, it->second), Rational(w.sign));
    }
  }
  return {space, target, out.finish()};
}

QSparse fiber_operator(const TensorFormSpace& space, const QMatrix& alt_map, const TensorFormSpace& target) {
  if (alt_map.rows() != int(target.components().size()) || alt_map.cols() != int(space.components().size()))
    throw InvalidArgument("fiber map size does not match the component counts");
  BlockAssembler<Rational> out(target.dim(), space.dim());
  for (int i = 0; i < alt_map.rows(); ++i)
    for (int j = 0; j < alt_map.cols(); ++j) {
      if (is_zero(alt_map(i, j))) continue;
      const auto& a = space.components()[j];
      const auto& b = target.components()[i];
      for (std::size_t h = 0; h < a.fibers.size(); ++h)
        if (a.fibers[h]->key != b.fibers[h]->key)
          throw InternalError("coefficient spaces differ across an algebraic fiber map: " + describe(a.sigma, a.tau) +
                              " -> " + describe(b.sigma, b.tau));
      for (int e = 0; e < a.dim; ++e) out.add(b.offset + e, a.offset + e, alt_map(i, j));
    }
  return out.finish();
}

LinearMap s_operator(const TensorSpaceHandle& space) {
  if (!valid_degrees(space->k() + 1, space->l() - 1, space->n())) return {space, nullptr, QSparse(0, space->dim())};
  return s_operator(space, make_tensor_space(space->params(), space->k() + 1, space->l() - 1));
}

LinearMap s_operator(const TensorSpaceHandle& space, const TensorSpaceHandle& target) {
  if (target->k() != space->k() + 1 || target->l() != space->l() - 1 || target->n() != space->n())
    throw InvalidArgument("S target must be Λ^{k+1,l-1}");
  QMatrix s = s_matrix(space->k(), space->l(), space->n()).matrix;
  return {space, target, fiber_operator(*space, s, *target)};
}

DimReport dim_report(const TensorFormSpace& space) {
  DimReport r;
  r.n = space.n();
  r.k = space.k();
  r.l = space.l();
  r.total = space.dim();
  for (const auto& c : space.components()) {
    ComponentInfo ci;
    ci.sigma = c.sigma.entries;
    ci.tau = c.tau.entries;
    ci.dim = c.dim;
    for (int h = 0; h < space.n(); ++h) {
      const auto& d = space.params().dirs[h];
      ci.fibers.push_back({d.p - c.reduction(h), d.r - c.reduction(h), c.fibers[h]->dim});
    }
    r.components.push_back(std::move(ci));
  }
  return r;
}

std::string fiber_label(const TensorFormSpace& space, const FormComponent& c) {
  std::string deg, reg;
  for (std::size_t h = 0; h < c.fibers.size(); ++h) {
    const auto& d = space.params().dirs[h];
    deg += (h ? "," : "") + std::to_string(c.fibers[h]->degree);
    std::string rv = std::to_string(d.r - c.reduction(int(h)));
    const auto& ri = d.r_interior;
    if (!ri.empty()) {
      if (std::all_of(ri.begin(), ri.end(), [&](int x) { return x == ri[0]; }))
        rv = std::to_string(ri[0] - c.reduction(int(h)));
      else
        rv = "*";
    }
    reg += (h ? "," : "") + rv;
  }
  return "S^{" + deg + "}_{" + reg + "}";
}

std::vector<std::vector<std::string>> proxy_table(const TensorFormSpace& space, ProxyConvention conv) {
  QMatrix p = proxy_identify(space.k(), space.l(), space.n(), conv);
  const int rows = proxy_slot_dim(space.k(), space.n());
  const int cols = proxy_slot_dim(space.l(), space.n());
  std::vector<std::vector<std::string>> table(rows, std::vector<std::string>(cols));
  for (int c = 0; c < p.cols(); ++c)
    for (int i = 0; i < p.rows(); ++i)
      if (!is_zero(p(i, c))) table[i / cols][i % cols] = fiber_label(space, space.components()[c]);
  return table;
}

}  // namespace bgg
