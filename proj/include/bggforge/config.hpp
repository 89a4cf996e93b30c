#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "bggforge/bgg_engine.hpp"

namespace bgg {

enum class Task { verify_diagram, derive, cohomology, interp_suite };

std::string to_string(Task t);
Task parse_task(const std::string& s);

/// A validated job description. Every field has been checked before any
/// diagram is assembled; parse errors raise InvalidArgument.
struct JobConfig {
  TensorParams params;
  Task task = Task::cohomology;
  std::optional<PresetName> preset;
  int J = 1;
  ArithmeticMode arithmetic;
  bool export_matrices = false;
  unsigned seed = 1;

  /// Normalized configuration: per-direction arrays, canonical rationals.
  nlohmann::json echo() const;
};

/// Accepted keys:
///   n, family ("spline" | "fe"), p, r (integer or one per direction),
///   cells (integer or one per direction) or breakpoints (one list of
///   "num/den" strings, or one list per direction), task, preset or J,
///   arithmetic ("exact" | "float"), tol, export, seed.
JobConfig parse_config(const nlohmann::json& j);
JobConfig load_config(const std::filesystem::path& path);

/// Checks degree/regularity admissibility and builds every 1D coefficient
/// space the diagram needs, so that unisolvence problems surface as user errors.
void validate_params(const TensorParams& params, int J);

}  // namespace bgg
