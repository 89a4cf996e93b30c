#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bggforge/config.hpp"
#include "bggforge/errors.hpp"
#include "bggforge/job.hpp"
#include "bggforge/parallel.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUserError = 2;
constexpr int kInternal = 3;

void apply_thread_cap() {
  const char* env = std::getenv("BGG_FORGE_THREADS");
  if (!env) return;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1)
    throw bgg::InvalidArgument("BGG_FORGE_THREADS must be a positive integer, got '" + std::string(env) + "'");
  bgg::set_max_threads(int(v));
}

std::string join(const json& arr) {
  std::string s = "(";
  for (std::size_t i = 0; i < arr.size(); ++i) s += (i ? "," : "") + arr[i].dump();
  return s + ")";
}

void print_summary(const bgg::JobResult& r, const std::string& out) {
  const json& rep = r.report;
  std::cout << "task: " << rep["config"]["task"].get<std::string>() << "\n";
  std::cout << "diagram: " << (rep["diagram"]["verified"].get<bool>() ? "verified" : "FAILED")
            << ", sign " << rep["diagram"]["sign"].get<int>() << "\n";
  if (rep.contains("cohomology")) std::cout << "H = " << join(rep["cohomology"]["derived"]["h"]) << "\n";
  if (rep.contains("interpolation")) {
    int passed = 0, total = 0;
    for (const auto& e : rep["interpolation"]["entries"]) {
      ++total;
      passed += e["passed"].get<bool>() ? 1 : 0;
    }
    std::cout << "interpolation checks: " << passed << "/" << total << " passed\n";
  }
  for (const auto& f : r.failures) std::cout << "violated: " << f << "\n";
  std::cout << "report: " << out << "/report.json\n";
}

int run_config(const bgg::JobConfig& config, const std::string& out) {
  bgg::JobResult r = bgg::run_job(config, out);
  print_summary(r, out);
  return r.exit_code == 0 ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor-product BGG diagrams, derived complexes and commuting interpolation"};
  app.require_subcommand(1);

  std::string config_path, out = "bgg-forge-out", arithmetic;
  bool do_export = false;
  auto* run = app.add_subcommand("run", "Run a JSON job configuration");
  run->add_option("config", config_path, "Configuration file")->required();
  run->add_option("--out", out, "Output directory");
  run->add_option("--arithmetic", arithmetic, "Override the configured arithmetic")
      ->check(CLI::IsMember({"exact", "float"}));
  run->add_flag("--export", do_export, "Export operators as Matrix Market files");

  std::string name, family = "spline", task = "cohomology";
  int p = 3, r = 1, cells = 2;
  auto* pre = app.add_subcommand("preset", "Run a named preset complex");
  pre->add_option("name", name, "hessian2d, stress2d, stress2d_rotated, hessian3d, elasticity3d or divdiv3d")
      ->required();
  pre->add_option("--p", p, "Polynomial degree");
  pre->add_option("--r", r, "Regularity");
  pre->add_option("--cells", cells, "Cells per direction");
  pre->add_option("--family", family, "spline or fe")->check(CLI::IsMember({"spline", "fe"}));
  pre->add_option("--task", task, "verify-diagram, derive, cohomology or interp-suite");
  pre->add_option("--out", out, "Output directory");
  pre->add_option("--arithmetic", arithmetic, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  pre->add_flag("--export", do_export, "Export operators as Matrix Market files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUserError;
  }

  try {
    apply_thread_cap();
    bgg::JobConfig config;
    if (*run) {
      config = bgg::load_config(config_path);
    } else {
      json j = {{"preset", name}, {"family", family}, {"p", p}, {"r", r}, {"cells", cells}, {"task", task}};
      config = bgg::parse_config(j);
    }
    if (!arithmetic.empty()) config.arithmetic.kind = bgg::parse_arithmetic(arithmetic);
    if (do_export) config.export_matrices = true;
    return run_config(config, out);
  } catch (const bgg::ConditionViolation& e) {
    std::cerr << "condition violated: " << e.what() << "\n";
    return kViolation;
  } catch (const bgg::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const bgg::Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUserError;
  } catch (const bgg::UnisolvenceFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const bgg::InsufficientRegularity& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const bgg::LockBusy& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const bgg::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
