#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bggforge/tensor_complex.hpp"

namespace bgg {

struct ConditionCheck {
  /// not-complex, not-anticommuting, S-not-bijective-at-J, S-rank-pattern
  std::string kind;
  int index = 0;
  bool passed = true;
  std::string detail;
};

struct SRank {
  int k = 0;
  int rows = 0;
  int cols = 0;
  int rank = 0;
  bool injective() const { return rank == cols; }
  bool surjective() const { return rank == rows; }
};

/// Rows J-1 (top) and J (bottom) of the tensor-product diagram, linked by S^{k,J}.
struct BggDiagram {
  int n = 0;
  int J = 0;
  TensorParams params;
  std::vector<TensorSpaceHandle> top;     // Λ^{k,J-1}, k = 0..n
  std::vector<TensorSpaceHandle> bottom;  // Λ^{k,J}, k = 0..n
  std::vector<LinearMap> d_top;           // k = 0..n-1
  std::vector<LinearMap> d_bottom;        // k = 0..n-1
  std::vector<LinearMap> S;               // S^{k,J}: bottom[k] -> top[k+1], k = 0..n-1
  /// Exact inverse of S^{J-1,J}.
  QSparse S_inverse;
  /// Realized sign in d S = sign · S d; 0 when undetermined.
  int sign = 0;
  std::vector<SRank> rank_pattern;
  std::vector<ConditionCheck> checks;

  bool verified() const;
};

/// Assembles the diagram and evaluates every condition without throwing on failures.
BggDiagram assemble_diagram(const TensorParams& params, int J);
/// assemble_diagram, then throws ConditionViolation for the first failed check.
BggDiagram build_diagram(const TensorParams& params, int J);

struct DerivedSpace {
  enum class Kind { full, range_perp, kernel };
  int index = 0;
  Kind kind = Kind::full;
  TensorSpaceHandle ambient;
  /// Columns span the Alt fiber of the space (components × fiber dimension).
  QMatrix fiber_basis;
  /// Ambient coefficients = embedding · coordinates.
  QSparse embedding;
  /// Left inverse of the embedding.
  QSparse left_inverse;

  int dim() const { return embedding.cols(); }
};

std::string to_string(DerivedSpace::Kind k);

struct BggComplex {
  std::string name;
  int n = 0;
  int J = 0;
  std::vector<DerivedSpace> spaces;  // Υ^0 .. Υ^n
  std::vector<QSparse> operators;    // 𝒟^i : Υ^i -> Υ^{i+1}
  /// 𝒟^{i+1} 𝒟^i = 0 for each i = 0..n-2.
  std::vector<bool> composition_zero;

  bool is_complex() const;
};

/// Throws InvalidArgument if the diagram failed verification.
BggComplex derive_complex(const BggDiagram& diagram);

enum class Arithmetic { exact, floating };

struct ArithmeticMode {
  Arithmetic kind = Arithmetic::exact;
  double tol = 1e-10;
};

std::string to_string(Arithmetic a);
Arithmetic parse_arithmetic(const std::string& s);

struct SequenceCohomology {
  std::vector<int> dims;
  std::vector<int> ranks;  // rank of the map leaving index i, i = 0..n-1
  std::vector<int> h;
};

struct CohomologyReport {
  ArithmeticMode mode;
  SequenceCohomology derived;
  SequenceCohomology top_row;
  SequenceCohomology bottom_row;
  std::vector<int> bound;  // h(top) + h(bottom) per index
  std::vector<bool> bound_ok;
  bool euler_ok = false;
  /// dim H^0 equals the row sum at index 0.
  bool equality_at_zero = false;
  /// Rows have H = (C(n, j), 0, ..., 0).
  bool rows_expected = false;
  /// Float mode only: some rank decision fell within 10x of the threshold.
  bool indeterminate = false;
  std::vector<std::string> indeterminate_operators;

  bool bound_holds() const;
};

CohomologyReport cohomology(const BggDiagram& diagram, const BggComplex& complex, ArithmeticMode mode = {});

/// Ranks of a sequence of maps under the given arithmetic.
SequenceCohomology sequence_cohomology(const std::vector<int>& dims, const std::vector<const QSparse*>& maps,
                                       ArithmeticMode mode, std::vector<std::string>* indeterminate = nullptr,
                                       const std::string& label = "");

/// Kernel witnesses in Υ^0 = Λ^{0,J-1}: the constant forms 1 ⊗ dx^τ and the
/// contractions Σ_j (-1)^j x_{ρ_j} ⊗ dx^{ρ \ ρ_j} for |ρ| = J.
std::vector<std::vector<Rational>> affine_kernel_witnesses(const BggDiagram& diagram);

struct WitnessCheck {
  int count = 0;
  int independent = 0;
  bool all_in_kernel = false;
};
WitnessCheck check_kernel_witnesses(const BggDiagram& diagram, const BggComplex& complex);

enum class PresetName { hessian2d, stress2d, stress2d_rotated, hessian3d, elasticity3d, divdiv3d };

PresetName parse_preset(const std::string& s);
std::string to_string(PresetName p);

struct PresetInfo {
  PresetName name;
  int n = 0;
  int J = 0;
  ProxyConvention convention = ProxyConvention::standard;
  std::vector<std::string> operators;  // proxy names of 𝒟^i
};

PresetInfo preset_info(PresetName p);

/// Table of one derived space in proxy layout with its ambient (k, l).
struct SpaceTable {
  int index = 0;
  int k = 0;
  int l = 0;
  std::string kind;
  std::vector<std::vector<std::string>> entries;
};

struct PresetResult {
  PresetInfo info;
  BggDiagram diagram;
  BggComplex complex;
  std::vector<SpaceTable> tables;
};

/// Throws InvalidArgument when the data violate the preset's constraints.
void check_preset_params(PresetName p, const TensorParams& params);
PresetResult preset(PresetName p, const TensorParams& params);

std::vector<SpaceTable> space_tables(const BggComplex& complex, ProxyConvention conv);

}  // namespace bgg
