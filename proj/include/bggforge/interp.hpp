#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bggforge/bgg_engine.hpp"
#include "bggforge/functionals.hpp"
#include "bggforge/tensor_complex.hpp"

namespace bgg {

/// scale · f_1(x_1) ⋯ f_n(x_n) dx^σ ⊗ dx^τ
struct RankOneTerm {
  Combination sigma;
  Combination tau;
  Rational scale = 1;
  std::vector<Func1D> factors;
};

/// Sum of rank-one terms of one bidegree (k, l).
struct SampleForm {
  int n = 0;
  int k = 0;
  int l = 0;
  std::vector<RankOneTerm> terms;

  bool exact() const;
  /// Exterior derivative, factor by factor.
  SampleForm d() const;
  /// Pointwise application of an algebraic map Alt^{k,l} -> Alt^{k2,l2}.
  SampleForm apply_alt(const QMatrix& alt_map, int k2, int l2) const;
};

enum class InterpVariant { canonical, averaged };

/// π^{k,l}_{⊗n}: per component and direction, the 1D operator of slot (s_h, t_h).
class InterpOperator {
 public:
  InterpOperator(TensorSpaceHandle target, NodeSet set);

  const TensorSpaceHandle& target() const { return target_; }
  const Interp1D& fiber(int component, int direction) const;

  /// Forms of another bidegree are mapped to zero.
  std::vector<Rational> apply(const SampleForm& u) const;
  std::vector<double> apply_float(const SampleForm& u) const;
  std::vector<Rational> apply(const std::vector<SampleForm>& parts) const;

 private:
  TensorSpaceHandle target_;
  std::vector<std::vector<std::shared_ptr<const Interp1D>>> fibers_;
};

/// Throws Unsupported for the averaged FE variant.
InterpOperator make_interp(const TensorSpaceHandle& space, NodeSet set = NodeSet::standard,
                           InterpVariant variant = InterpVariant::canonical);

/// Tensor Gram matrix (block diagonal over components).
QSparse tensor_gram(const TensorFormSpace& space);

/// L² norm of a sample form, by exact integration where possible and
/// composite Gauss quadrature otherwise.
double sample_l2_norm(const SampleForm& u);

struct Residual {
  bool exact_mode = true;
  /// Exact mode: the coefficient residual vanishes identically.
  bool exact_zero = false;
  double l2 = 0.0;
  double relative = 0.0;

  bool passes(double tol) const { return exact_mode ? exact_zero : relative <= tol; }
};

/// ‖d π u − π d u‖ for u of bidegree (k, l).
Residual check_commute_d(const TensorParams& params, const SampleForm& u, ArithmeticMode mode,
                         NodeSet set = NodeSet::standard);
/// ‖S π u − π S u‖.
Residual check_commute_S(const TensorParams& params, const SampleForm& u, ArithmeticMode mode,
                         NodeSet set = NodeSet::standard);
/// ‖π (I⊗P) u − (I⊗P) π u‖ with P the orthogonal projector onto ran(s^{k-1,l+1})^⊥.
Residual check_commute_projection(const TensorParams& params, const SampleForm& u, ArithmeticMode mode,
                                  NodeSet set = NodeSet::standard);

/// Orthogonal projector of Alt^{k,l} onto ran(s^{k-1,l+1})^⊥; identity if that map does not exist.
QMatrix fiber_projector(int k, int l, int n);

/// Without point atoms: discontinuous piecewise polynomials on the merged
/// breakpoints of the target mesh and every moment weight, of degree at least
/// the largest weight degree and one above the target degree. Such functionals
/// only see the L² projection onto this space, so the norm computed on it is
/// the L² operator norm. With point atoms (finite elements): maximally smooth
/// splines of that degree on the bisected merged mesh, and the norm is a lower
/// bound for the unbounded L² quantity.
SpaceHandle norm_ambient(const Interp1D& op);
/// L²→L² norm of a 1D operator on norm_ambient(op).
double operator_norm_1d(const Interp1D& op);
/// Maximum over components of the product of 1D norms (π is block diagonal
/// and Kronecker within a block, so this is the norm of the tensor operator).
double operator_norm(const InterpOperator& op);

/// Deterministic random rank-one sample with polynomial factors of the given degree.
SampleForm random_polynomial_sample(int n, int k, int l, int degree, unsigned seed, int terms = 2);
/// Rank-one sample with trigonometric factors.
SampleForm trig_sample(int n, int k, int l, unsigned seed, int terms = 2);
/// Sample whose coefficient functions lie in the space, with its coefficient vector.
struct DiscreteSample {
  SampleForm form;
  std::vector<Rational> coeffs;
};
DiscreteSample sample_from_space(const TensorFormSpace& space, unsigned seed, int terms = 3);

/// One line of the interpolation suite.
struct SuiteEntry {
  std::string check;   // commute-d, commute-S, commute-P, projection, node-sets, zero-extension
  std::string sample;  // polynomial, trig, discrete, mixed
  int k = 0;
  int l = 0;
  Residual residual;
  bool passed = false;
};

/// Every commutation, projection and node-set check on both rows of the
/// diagram (params, J), with polynomial samples in exact arithmetic and
/// trigonometric samples in float arithmetic.
std::vector<SuiteEntry> run_interp_suite(const TensorParams& params, int J, unsigned seed = 1, double tol = 1e-10);

}  // namespace bgg
