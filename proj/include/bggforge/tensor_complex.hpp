#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bggforge/alt_forms.hpp"
#include "bggforge/sparse.hpp"
#include "bggforge/spaces_1d.hpp"

namespace bgg {

/// Per-direction 1D data of a tensor-product space on [0,1]^n.
struct TensorParams {
  int n = 0;
  Family family = Family::spline;
  std::vector<Params1D> dirs;

  /// Uniform data in every direction.
  static TensorParams uniform(int n, Family family, int p, int r, int cells);
};

/// One summand f(x) dx^σ ⊗ dx^τ of a form-valued space. The coefficient f lives
/// in the tensor product of `fibers`, with fiber h lowered by s_h + t_h.
struct FormComponent {
  Combination sigma;
  Combination tau;
  CharVector s;
  CharVector t;
  std::vector<SpaceHandle> fibers;
  int offset = 0;
  int dim = 0;

  int reduction(int h) const { return s.bits[h] + t.bits[h]; }
};

class TensorFormSpace {
 public:
  TensorFormSpace(TensorParams params, int k, int l);

  int n() const { return params_.n; }
  int k() const { return k_; }
  int l() const { return l_; }
  int dim() const { return dim_; }
  const TensorParams& params() const { return params_; }
  const std::vector<FormComponent>& components() const { return components_; }
  const AltSpace& alt() const { return alt_; }
  /// Component index of dx^σ ⊗ dx^τ, equal to its Alt basis index.
  int component_index(const Combination& sigma, const Combination& tau) const {
    return alt_.index_of(sigma, tau);
  }

 private:
  TensorParams params_;
  int k_;
  int l_;
  AltSpace alt_;
  std::vector<FormComponent> components_;
  int dim_ = 0;
};

using TensorSpaceHandle = std::shared_ptr<const TensorFormSpace>;

/// Throws InvalidArgument naming the component when a fiber cannot be built.
TensorSpaceHandle make_tensor_space(const TensorParams& params, int k, int l);

struct LinearMap {
  TensorSpaceHandle domain;
  TensorSpaceHandle codomain;
  QSparse matrix;
};

/// d^k : Λ^{k,l} → Λ^{k+1,l}. The target is built from the same parameters.
LinearMap ext_derivative(const TensorSpaceHandle& space);
LinearMap ext_derivative(const TensorSpaceHandle& space, const TensorSpaceHandle& target);

/// S^{k,l} = ⊕ s^{k,l} ⊗ I : Λ^{k,l} → Λ^{k+1,l-1}. For l = 0 the codomain is empty.
LinearMap s_operator(const TensorSpaceHandle& space);
LinearMap s_operator(const TensorSpaceHandle& space, const TensorSpaceHandle& target);

/// Alt-fiber map tensored with identities on the coefficient spaces of matching components.
QSparse fiber_operator(const TensorFormSpace& space, const QMatrix& alt_map, const TensorFormSpace& target);

struct FiberInfo {
  int degree = 0;
  int regularity = 0;
  int dim = 0;
};

struct ComponentInfo {
  std::vector<int> sigma;
  std::vector<int> tau;
  std::vector<FiberInfo> fibers;
  int dim = 0;
};

struct DimReport {
  int n = 0;
  int k = 0;
  int l = 0;
  std::vector<ComponentInfo> components;
  int total = 0;
};

DimReport dim_report(const TensorFormSpace& space);

/// Notation of a fiber triple, e.g. "S^{3,2,1}_{1,0,-1}". Nonuniform interior
/// regularity is written as "*".
std::string fiber_label(const TensorFormSpace& space, const FormComponent& c);

/// Space table in proxy layout: vector entries for one nontrivial slot, a matrix
/// for two. Entry [a][b] is the label of the component whose proxy coordinates
/// are (a, b) under proxy_identify. Requires n ∈ {2,3}.
std::vector<std::vector<std::string>> proxy_table(const TensorFormSpace& space,
                                                  ProxyConvention conv = ProxyConvention::standard);

}  // namespace bgg
