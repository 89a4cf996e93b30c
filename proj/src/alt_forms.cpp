#include "bggforge/alt_forms.hpp"

#include <algorithm>
#include <map>

#include "bggforge/errors.hpp"

namespace bgg {

bool Combination::contains(int i) const { return std::binary_search(entries.begin(), entries.end(), i); }

int CharVector::weight() const {
  int w = 0;
  for (int b : bits) w += b;
  return w;
}

int CharVector::partial_sum(int m) const {
  int w = 0;
  for (int i = 0; i < m && i < int(bits.size()); ++i) w += bits[i];
  return w;
}

CharVector to_char_vector(const Combination& c) {
  CharVector v;
  v.bits.assign(c.n, 0);
  for (int e : c.entries) v.bits[e - 1] = 1;
  return v;
}

Combination to_combination(const CharVector& v) {
  Combination c;
  c.n = int(v.bits.size());
  for (int i = 0; i < c.n; ++i)
    if (v.bits[i]) c.entries.push_back(i + 1);
  return c;
}

long binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Combination> enumerate_combinations(int k, int n) {
  std::vector<Combination> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back({n, cur});
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

WedgeResult wedge_front(int i, const Combination& sigma) {
  WedgeResult w;
  if (sigma.contains(i)) return w;
  int before = 0;
  for (int e : sigma.entries)
    if (e < i) ++before;
  w.sign = before % 2 ? -1 : 1;
  w.result = sigma;
  w.result.entries.insert(w.result.entries.begin() + before, i);
  return w;
}

namespace {

int index_in(const std::vector<Combination>& list, const Combination& c) {
  auto it = std::lower_bound(list.begin(), list.end(), c);
  if (it == list.end() || !(*it == c)) throw InvalidArgument("combination not in list");
  return int(it - list.begin());
}

void check_degrees(int k, int l, int n) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  if (k < 0 || l < 0 || k > n || l > n) throw InvalidArgument("form degree outside [0, n]");
}

}  // namespace

AltSpace::AltSpace(int k, int l, int n) : k_(k), l_(l), n_(n) {
  check_degrees(k, l, n);
  first_ = enumerate_combinations(k, n);
  second_ = enumerate_combinations(l, n);
  for (const auto& s : first_)
    for (const auto& t : second_) basis_.push_back({s, t});
}

int AltSpace::index_of(const Combination& sigma, const Combination& tau) const {
  return index_in(first_, sigma) * int(second_.size()) + index_in(second_, tau);
}

int AltShape::dim() const {
  if (k < 0 || l < 0 || k > n || l > n) return 0;
  return int(binomial(n, k) * binomial(n, l));
}

AlgebraicMap s_matrix(int k, int l, int n) {
  check_degrees(k, l, n);
  AlgebraicMap map;
  map.domain = {k, l, n};
  map.codomain = {k + 1, l - 1, n};
  AltSpace dom(k, l, n);
  map.matrix = QMatrix(map.codomain.dim(), dom.dim());
  if (map.codomain.dim() == 0) return map;
  AltSpace cod(k + 1, l - 1, n);
  for (int c = 0; c < dom.dim(); ++c) {
    const auto& [sigma, tau] = dom[c];
    for (int j = 0; j < l; ++j) {
      WedgeResult w = wedge_front(tau.entries[j], sigma);
      if (w.sign == 0) continue;
      Combination rest = tau;
      rest.entries.erase(rest.entries.begin() + j);
      const int sign = (j % 2 ? -1 : 1) * w.sign;
      map.matrix(cod.index_of(w.result, rest), c) += sign;
    }
  }
  return map;
}

ProxyName parse_proxy_name(const std::string& name) {
  static const std::map<std::string, ProxyName> names = {
      {"mskw2", ProxyName::mskw2}, {"mskw3", ProxyName::mskw3}, {"vskw", ProxyName::vskw},
      {"tr", ProxyName::tr},       {"iota", ProxyName::iota},   {"dev", ProxyName::dev},
      {"calT", ProxyName::calT},   {"sskw", ProxyName::sskw},   {"sym", ProxyName::sym},
      {"skw", ProxyName::skw}};
  auto it = names.find(name);
  if (it == names.end()) throw InvalidArgument("unknown proxy operator '" + name + "'");
  return it->second;
}

std::string to_string(ProxyName name) {
  switch (name) {
    case ProxyName::mskw2: return "mskw2";
    case ProxyName::mskw3: return "mskw3";
    case ProxyName::vskw: return "vskw";
    case ProxyName::tr: return "tr";
    case ProxyName::iota: return "iota";
    case ProxyName::dev: return "dev";
    case ProxyName::calT: return "calT";
    case ProxyName::sskw: return "sskw";
    case ProxyName::sym: return "sym";
    case ProxyName::skw: return "skw";
  }
  return "?";
}

QMatrix proxy_map(ProxyName name, int n) {
  auto need = [&](int dim) {
    if (n != dim) throw InvalidArgument(to_string(name) + " is defined only for n = " + std::to_string(dim));
  };
  if (n < 1) throw InvalidArgument("dimension must be positive");
  const int nn = n * n;
  auto at = [n](int i, int j) { return i * n + j; };
  const Rational half(1, 2);
  switch (name) {
    case ProxyName::mskw2: {
      need(2);
      QMatrix m(4, 1);
      m(at(0, 1), 0) = 1;
      m(at(1, 0), 0) = -1;
      return m;
    }
    case ProxyName::mskw3: {
      need(3);
      // mskw(v) w = v × w
      QMatrix m(9, 3);
      m(at(2, 1), 0) = 1;
      m(at(1, 2), 0) = -1;
      m(at(0, 2), 1) = 1;
      m(at(2, 0), 1) = -1;
      m(at(1, 0), 2) = 1;
      m(at(0, 1), 2) = -1;
      return m;
    }
    case ProxyName::vskw: {
      need(3);
      QMatrix m(3, 9);
      m(0, at(2, 1)) = half;
      m(0, at(1, 2)) = -half;
      m(1, at(0, 2)) = half;
      m(1, at(2, 0)) = -half;
      m(2, at(1, 0)) = half;
      m(2, at(0, 1)) = -half;
      return m;
    }
    case ProxyName::sskw: {
      need(2);
      QMatrix m(1, 4);
      m(0, at(0, 1)) = half;
      m(0, at(1, 0)) = -half;
      return m;
    }
    case ProxyName::tr: {
      QMatrix m(1, nn);
      for (int i = 0; i < n; ++i) m(0, at(i, i)) = 1;
      return m;
    }
    case ProxyName::iota: {
      QMatrix m(nn, 1);
      for (int i = 0; i < n; ++i) m(at(i, i), 0) = 1;
      return m;
    }
    case ProxyName::dev: {
      QMatrix m = QMatrix::identity(nn);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(at(i, i), at(j, j)) -= Rational(1, n);
      return m;
    }
    case ProxyName::calT: {
      need(3);
      QMatrix m(9, 9);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(at(i, j), at(j, i)) += 1;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(at(i, i), at(j, j)) -= 1;
      return m;
    }
    case ProxyName::sym:
    case ProxyName::skw: {
      const Rational sign = name == ProxyName::sym ? 1 : -1;
      QMatrix m(nn, nn);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          m(at(i, j), at(i, j)) += half;
          m(at(i, j), at(j, i)) += sign * half;
        }
      return m;
    }
  }
  throw InternalError("unhandled proxy operator");
}

int proxy_slot_dim(int k, int n) { return int(binomial(n, k)); }

namespace {

/// Signed permutation of a single slot: proxy coordinate i = sign * alt coefficient perm[i].
QMatrix slot_proxy(int k, int n, ProxyConvention conv) {
  const int d = int(binomial(n, k));
  QMatrix p(d, d);
  if (conv == ProxyConvention::rotated2d) {
    if (n != 2) throw InvalidArgument("rotated proxy convention requires n = 2");
    if (k == 1) {
      // ω = c_1 dx_1 + c_2 dx_2 = v_1 e_1 + v_2 e_2 with e_1 = dx_2, e_2 = -dx_1
      p(0, 1) = 1;
      p(1, 0) = -1;
      return p;
    }
    return QMatrix::identity(d);
  }
  if (n == 3 && k == 2) {
    // combinations in order (1,2), (1,3), (2,3)
    p(0, 2) = 1;
    p(1, 1) = -1;
    p(2, 0) = 1;
    return p;
  }
  return QMatrix::identity(d);
}

}  // namespace

QMatrix proxy_identify(int k, int l, int n, ProxyConvention conv) {
  if (n != 2 && n != 3) throw Unsupported("proxy fields are defined for n = 2 and n = 3 only");
  check_degrees(k, l, n);
  QMatrix a = slot_proxy(k, n, conv);
  QMatrix b = slot_proxy(l, n, conv);
  QMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (is_zero(a(i, j))) continue;
      for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c) out(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
    }
  return out;
}

}  // namespace bgg
