#include "bggforge/config.hpp"

#include <fstream>
#include <set>

#include "bggforge/errors.hpp"

namespace bgg {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {"n",    "family", "p",     "r",          "cells",  "breakpoints", "task",
                                          "preset", "J",    "arithmetic", "tol", "export", "seed"};

[[noreturn]] void schema(const std::string& msg) { throw InvalidArgument("config: " + msg); }

int as_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) schema("'" + key + "' must be an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) schema("'" + key + "' must be a string");
  return v.get<std::string>();
}

/// Integer or array of n integers.
std::vector<int> per_direction(const json& v, const std::string& key, int n) {
  if (v.is_number_integer()) return std::vector<int>(n, v.get<int>());
  if (!v.is_array() || int(v.size()) != n)
    schema("'" + key + "' must be an integer or an array of " + std::to_string(n) + " integers");
  std::vector<int> out;
  for (const auto& e : v) out.push_back(as_int(e, key));
  return out;
}

Rational as_rational(const json& v) {
  if (!v.is_string()) schema("breakpoints must be given as \"num/den\" strings");
  return parse_rational(v.get<std::string>());
}

std::vector<Rational> breakpoint_list(const json& v) {
  if (!v.is_array()) schema("'breakpoints' must be an array");
  std::vector<Rational> out;
  for (const auto& e : v) out.push_back(as_rational(e));
  if (out.size() < 2) schema("a breakpoint list needs at least two entries");
  if (out.front() != 0 || out.back() != 1) schema("breakpoints must start at 0 and end at 1");
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    if (!(out[i] < out[i + 1])) schema("breakpoints must be strictly increasing");
  return out;
}

Family parse_family(const std::string& s) {
  if (s == "spline") return Family::spline;
  if (s == "fe") return Family::finite_element;
  schema("unknown family '" + s + "' (expected spline or fe)");
}

}  // namespace

std::string to_string(Task t) {
  switch (t) {
    case Task::verify_diagram: return "verify-diagram";
    case Task::derive: return "derive";
    case Task::cohomology: return "cohomology";
    case Task::interp_suite: return "interp-suite";
  }
  return "?";
}

Task parse_task(const std::string& s) {
  for (Task t : {Task::verify_diagram, Task::derive, Task::cohomology, Task::interp_suite})
    if (to_string(t) == s) return t;
  throw InvalidArgument("config: unknown task '" + s +
                        "' (expected verify-diagram, derive, cohomology or interp-suite)");
}

void validate_params(const TensorParams& params, int J) {
  if (params.n < 1 || params.n > 4) throw InvalidArgument("config: n must lie in 1..4");
  if (J < 1 || J > params.n)
    throw InvalidArgument("config: J must satisfy 1 <= J <= n = " + std::to_string(params.n));
  for (int h = 0; h < params.n; ++h) {
    const Params1D& d = params.dirs[h];
    const std::string where = "direction " + std::to_string(h + 1) + ": ";
    if (d.p < 2) throw InvalidArgument(where + "degree p >= 2 required, got p = " + std::to_string(d.p));
    if (d.family == Family::spline) {
      if (d.r > d.p - 1)
        throw InvalidArgument(where + "spline regularity must satisfy r <= p - 1 (C^r splines of degree p), got p = " +
                              std::to_string(d.p) + ", r = " + std::to_string(d.r));
      if (d.r < 1)
        throw InvalidArgument(where + "spline regularity r >= 1 required so that second derivatives are in L2, got r = " +
                              std::to_string(d.r));
    } else {
      if (d.r < 1) throw InvalidArgument(where + "finite elements require r >= 1, got r = " + std::to_string(d.r));
      if (d.p < 2 * d.r + 1)
        throw InvalidArgument(where + "finite element regularity must satisfy p >= 2r + 1, got p = " +
                              std::to_string(d.p) + ", r = " + std::to_string(d.r));
    }
    for (int reduction = 0; reduction <= 2; ++reduction) coefficient_space(d, reduction);
  }
}

nlohmann::json JobConfig::echo() const {
  json j;
  j["n"] = params.n;
  j["family"] = to_string(params.family);
  json p = json::array(), r = json::array(), b = json::array();
  for (const auto& d : params.dirs) {
    p.push_back(d.p);
    r.push_back(d.r);
    json row = json::array();
    for (const auto& x : d.breaks) row.push_back(to_string(x));
    b.push_back(row);
  }
  j["p"] = p;
  j["r"] = r;
  j["breakpoints"] = b;
  j["task"] = to_string(task);
  if (preset) j["preset"] = to_string(*preset);
  j["J"] = J;
  j["arithmetic"] = to_string(arithmetic.kind);
  if (arithmetic.kind == Arithmetic::floating) j["tol"] = arithmetic.tol;
  j["export"] = export_matrices;
  j["seed"] = seed;
  return j;
}

JobConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) schema("top level must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!kKnownKeys.count(key)) schema("unknown key '" + key + "'");

  JobConfig c;
  if (j.contains("preset") && j.contains("J")) schema("give either 'preset' or 'J', not both");
  if (j.contains("preset")) {
    c.preset = parse_preset(as_string(j["preset"], "preset"));
  } else if (!j.contains("J")) {
    schema("one of 'preset' or 'J' is required");
  }

  int n = 0;
  if (j.contains("n")) n = as_int(j["n"], "n");
  else if (c.preset) n = preset_info(*c.preset).n;
  else schema("'n' is required");
  if (n < 1 || n > 4) schema("'n' must lie in 1..4");

  if (!j.contains("family")) schema("'family' is required");
  const Family family = parse_family(as_string(j["family"], "family"));
  if (!j.contains("p")) schema("'p' is required");
  if (!j.contains("r")) schema("'r' is required");
  const std::vector<int> p = per_direction(j["p"], "p", n);
  const std::vector<int> r = per_direction(j["r"], "r", n);

  std::vector<std::vector<Rational>> breaks(n);
  if (j.contains("cells") == j.contains("breakpoints")) schema("give exactly one of 'cells' or 'breakpoints'");
  if (j.contains("cells")) {
    const std::vector<int> cells = per_direction(j["cells"], "cells", n);
    for (int h = 0; h < n; ++h) {
      if (cells[h] < 1) schema("'cells' must be positive");
      breaks[h] = uniform_breakpoints(cells[h]);
    }
  } else {
    const json& b = j["breakpoints"];
    if (!b.is_array() || b.empty()) schema("'breakpoints' must be a nonempty array");
    if (b[0].is_array()) {
      if (int(b.size()) != n) schema("'breakpoints' needs one list per direction");
      for (int h = 0; h < n; ++h) breaks[h] = breakpoint_list(b[h]);
    } else {
      const auto shared = breakpoint_list(b);
      for (int h = 0; h < n; ++h) breaks[h] = shared;
    }
  }

  c.params.n = n;
  c.params.family = family;
  for (int h = 0; h < n; ++h) {
    Params1D d;
    d.family = family;
    d.p = p[h];
    d.r = r[h];
    d.breaks = breaks[h];
    c.params.dirs.push_back(d);
  }

  c.task = j.contains("task") ? parse_task(as_string(j["task"], "task")) : Task::cohomology;
  if (j.contains("arithmetic")) c.arithmetic.kind = parse_arithmetic(as_string(j["arithmetic"], "arithmetic"));
  if (j.contains("tol")) {
    if (!j["tol"].is_number() || j["tol"].get<double>() <= 0) schema("'tol' must be a positive number");
    c.arithmetic.tol = j["tol"].get<double>();
  }
  if (j.contains("export")) {
    if (!j["export"].is_boolean()) schema("'export' must be a boolean");
    c.export_matrices = j["export"].get<bool>();
  }
  if (j.contains("seed")) {
    const int s = as_int(j["seed"], "seed");
    if (s < 0) schema("'seed' must be nonnegative");
    c.seed = unsigned(s);
  }

  if (c.preset) {
    check_preset_params(*c.preset, c.params);
    c.J = preset_info(*c.preset).J;
  } else {
    c.J = as_int(j["J"], "J");
  }
  validate_params(c.params, c.J);
  return c;
}

JobConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

}  // namespace bgg
