#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bggforge/dense.hpp"
#include "bggforge/functionals.hpp"
#include "bggforge/polynomial.hpp"

namespace bgg {

enum class Family { spline, finite_element };

/// The four 1D finite element spaces of a two-row diagram with parent data (q, r).
enum class FeKind { W00, W10, W01, W11 };

std::string to_string(Family f);
std::string to_string(FeKind k);

/// Local node functional of a finite element cell.
struct NodeFunctional {
  enum class Kind { point_derivative, legendre_moment, endpoint_sum };
  Kind kind = Kind::point_derivative;
  int order = 0;             // point_derivative: derivative order
  int endpoint = 0;          // point_derivative: 0 = left end, 1 = right end
  int index = 0;             // legendre_moment: Legendre index
  bool of_derivative = false;  // legendre_moment: test ∂u instead of u
  int cell = 0;
};

/// Hermite-type local pattern. H00(Q, R): degree Q, jets 0..R at both ends and
/// ∫ℓ_i ∂u for i = 1..Q-2R-1. H10(Q, R): degree Q-1, jets 0..R-1 at both ends
/// and ∫ℓ_i u for i = 0..Q-2R-1.
struct FePattern {
  enum class Type { H00, H10 };
  Type type = Type::H00;
  int Q = 0;
  int R = 0;

  int degree() const { return type == Type::H00 ? Q : Q - 1; }
  /// Jets shared per interior node.
  int jets() const { return type == Type::H00 ? R + 1 : R; }
  int moments() const { return type == Type::H00 ? Q - 2 * R - 1 : Q - 2 * R; }
  int local_dim() const { return degree() + 1; }
};

/// Standard local functionals of a pattern on one cell.
std::vector<NodeFunctional> standard_node_functionals(const FePattern& pat, int cell);
/// H00 only: u(0)+u(1), derivatives 1..R at both ends, ∫ℓ_i ∂u for i = 0..Q-2R-1.
std::vector<NodeFunctional> commuting_node_functionals(const FePattern& pat, int cell);

Functional1D to_functional(const NodeFunctional& nf, const std::vector<Rational>& breaks);

struct Space1D {
  Family family = Family::spline;
  int degree = 0;
  std::vector<Rational> breakpoints;
  /// Continuity order at each interior breakpoint (-1 = discontinuous).
  std::vector<int> regularity;
  /// Spline only: open knot vector.
  std::vector<Rational> knots;
  /// Finite element only: the local pattern the basis is dual to.
  FePattern pattern;
  int dim = 0;
  std::vector<PiecewisePoly> basis;
  /// dual[i](basis[j]) = δ_ij. Splines: L² projection onto the B-splines alive on supp B_i. FE: global node functionals.
  std::vector<Functional1D> dual;
  /// Descriptor; two spaces with equal keys are the same space with the same basis.
  std::string key;

  int cells() const { return int(breakpoints.size()) - 1; }
};

using SpaceHandle = std::shared_ptr<const Space1D>;

std::vector<Rational> uniform_breakpoints(int cells);

/// 𝒮^p_r on the given breakpoints; r holds one entry per interior breakpoint.
SpaceHandle make_spline_space(int p, const std::vector<Rational>& breakpoints, const std::vector<int>& r);
SpaceHandle make_spline_space(int p, const std::vector<Rational>& breakpoints, int r);

/// Throws UnisolvenceFailure for a singular local Vandermonde matrix.
SpaceHandle make_fe_space(FeKind kind, int q, int r, const std::vector<Rational>& breakpoints);
SpaceHandle make_fe_space(FeKind kind, int q, int r, int cells);

/// Cox–de Boor recursion evaluated directly from the knot vector.
Rational eval_bspline(const Space1D& space, int i, const Rational& x);

/// D[i][j] = dual_target[i](basis_j'); target is the space of derivatives.
struct DerivativeMap {
  SpaceHandle target;
  QMatrix matrix;
};
DerivativeMap derivative_map_1d(const SpaceHandle& space, const SpaceHandle& target);
/// Target chosen by family: 𝒮^{p-1}_{r-1} for splines; H00(Q,R) -> H10(Q,R) and H10(Q,R) -> H10(Q-1,R-1) for FE.
DerivativeMap derivative_map_1d(const SpaceHandle& space);

QMatrix gram_1d(const Space1D& space);

/// Coefficients of Σ_i dual_i(u) b_i.
std::vector<Rational> canonical_interp_1d(const Space1D& space, const Func1D& u);
std::vector<double> canonical_interp_1d_float(const Space1D& space, const Func1D& u);

/// Element of the space with the given coefficients.
PiecewisePoly combine(const Space1D& space, const std::vector<Rational>& coeffs);

/// Family data shared by the coefficient spaces of one direction.
struct Params1D {
  Family family = Family::spline;
  int p = 1;
  int r = 0;
  /// Spline only: per-interior-breakpoint regularity overriding r when nonempty.
  std::vector<int> r_interior;
  std::vector<Rational> breaks;

  std::vector<int> interior_regularity() const;
};

/// Space with all indices lowered by `reduction` ∈ {0, 1, 2}.
SpaceHandle coefficient_space(const Params1D& params, int reduction);

enum class NodeSet { standard, commuting };

/// π u = Σ_i functionals[i](u) target.basis[i].
struct Interp1D {
  SpaceHandle target;
  std::vector<Functional1D> functionals;

  std::vector<Rational> apply(const Func1D& u) const;
  std::vector<double> apply_float(const Func1D& u) const;
  /// Matrix of π restricted to the span of `from`: column j = π(from.basis[j]).
  QMatrix matrix_on(const Space1D& from) const;
};

/// 1D operator for the slot (s, t) of one direction. Splines: π̃_{s+t}. FE: Π^{st}.
/// NodeSet::commuting rewrites the (0,0) FE operator through the commuting local sets.
Interp1D interp_1d(const Params1D& params, int s, int t, NodeSet set = NodeSet::standard);

/// Spline π̃_level built by antiderivatives from π̃_0 on 𝒮^p_r.
Interp1D antiderivative_interp_1d(const Params1D& params, int level);

/// Cellwise FE interpolant from a chosen local functional set (no global gluing).
PiecewisePoly fe_local_interpolant(const FePattern& pat, const std::vector<Rational>& breaks, const Func1D& u,
                                   NodeSet set);

/// Pattern of each FE kind for parent data (q, r).
FePattern fe_pattern(FeKind kind, int q, int r);

}  // namespace bgg
