#pragma once

#include <string>
#include <vector>

#include "bggforge/dense.hpp"

namespace bgg {

/// Strictly increasing subset of {1, ..., n}.
struct Combination {
  int n = 0;
  std::vector<int> entries;

  int size() const { return int(entries.size()); }
  bool contains(int i) const;
  friend bool operator==(const Combination&, const Combination&) = default;
  friend auto operator<=>(const Combination&, const Combination&) = default;
};

/// 0/1 indicator vector of a combination, bits[i-1] = 1 iff i is in the set.
struct CharVector {
  std::vector<int> bits;

  int weight() const;
  /// Sum of the first m bits; partial_sum(0) = 0.
  int partial_sum(int m) const;
  friend bool operator==(const CharVector&, const CharVector&) = default;
};

CharVector to_char_vector(const Combination& c);
Combination to_combination(const CharVector& v);

/// All binomial(n, k) combinations in lexicographic order.
std::vector<Combination> enumerate_combinations(int k, int n);

long binomial(int n, int k);

/// Wedge dx^i ∧ dx^σ normalized into increasing order. sign = 0 if i ∈ σ.
struct WedgeResult {
  int sign = 0;
  Combination result;
};
WedgeResult wedge_front(int i, const Combination& sigma);

struct AltBasisIndex {
  Combination sigma;
  Combination tau;
  friend bool operator==(const AltBasisIndex&, const AltBasisIndex&) = default;
};

/// Canonical basis dx^σ ⊗ dx^τ of Alt^{k,l}(R^n), lexicographic in (σ, τ).
/// Index of (σ, τ) is index(σ) * binomial(n, l) + index(τ).
class AltSpace {
 public:
  AltSpace(int k, int l, int n);

  int k() const { return k_; }
  int l() const { return l_; }
  int n() const { return n_; }
  int dim() const { return int(basis_.size()); }
  const std::vector<AltBasisIndex>& basis() const { return basis_; }
  const AltBasisIndex& operator[](int i) const { return basis_[i]; }
  int index_of(const Combination& sigma, const Combination& tau) const;

 private:
  int k_, l_, n_;
  std::vector<Combination> first_, second_;
  std::vector<AltBasisIndex> basis_;
};

struct AltShape {
  int k = 0;
  int l = 0;
  int n = 0;
  /// Zero when either degree is outside [0, n].
  int dim() const;
  friend bool operator==(const AltShape&, const AltShape&) = default;
};

struct AlgebraicMap {
  AltShape domain;
  AltShape codomain;
  QMatrix matrix;
};

/// s^{k,l}: Alt^{k,l} -> Alt^{k+1,l-1}, entries in {-1, 0, 1}.
/// l = 0 or k = n yields the zero map into the trivial space (0 rows).
AlgebraicMap s_matrix(int k, int l, int n);

enum class ProxyName { mskw2, mskw3, vskw, tr, iota, dev, calT, sskw, sym, skw };

ProxyName parse_proxy_name(const std::string& name);
std::string to_string(ProxyName name);

/// Matrix of a named algebraic operator acting on proxy coordinates:
/// scalars, vectors (R^n) or n×n matrices flattened row-major.
QMatrix proxy_map(ProxyName name, int n);

enum class ProxyConvention {
  /// e_i = dx_i for 1-forms; e_1 = dx_2∧dx_3, e_2 = dx_3∧dx_1, e_3 = dx_1∧dx_2 in 3D.
  standard,
  /// 2D only: the 1-form slot is rotated, e_1 = dx_2, e_2 = -dx_1 (curl/div proxies).
  rotated2d,
};

/// Signed permutation taking Alt^{k,l} coefficients to proxy coordinates.
/// Matrix-valued proxies are indexed (first-slot index, second-slot index).
QMatrix proxy_identify(int k, int l, int n, ProxyConvention conv = ProxyConvention::standard);

/// Number of proxy components in one slot of Alt^k(R^n) (1 or n).
int proxy_slot_dim(int k, int n);

}  // namespace bgg
