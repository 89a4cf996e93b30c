#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/file.h>
#include <sys/wait.h>
#include <fcntl.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bggforge/config.hpp"
#include "bggforge/errors.hpp"
#include "bggforge/matrix_market.hpp"
#include "oracles.hpp"

using namespace bgg;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("bggforge_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p.parent_path());
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run forge(const std::string& args, const std::string& env = "") {
  const fs::path log = scratch("log");
  fs::create_directories(log);
  const std::string cmd = env + " " + BGG_FORGE_EXE + " " + args + " > " + (log / "out").string() + " 2> " +
                          (log / "err").string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(log / "out");
  r.err = slurp(log / "err");
  return r;
}

fs::path write_config(const std::string& name, const json& j) {
  fs::path p = scratch(name + ".json");
  std::ofstream(p) << j.dump();
  return p;
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

int spline_dim(int p, int r, int cells) { return (p + 1) * cells - (r + 1) * (cells - 1); }

}  // namespace

TEST_CASE("elasticity preset reports H = (6,0,0,0)") {
  fs::path cfg = write_config("elasticity", {{"preset", "elasticity3d"},
                                             {"family", "spline"},
                                             {"p", 3},
                                             {"r", 1},
                                             {"cells", 2},
                                             {"task", "cohomology"}});
  fs::path out = scratch("elasticity_out");
  Run r = forge("run " + cfg.string() + " --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("H = (6,0,0,0)") != std::string::npos);
  json rep = read_json(out / "report.json");
  CHECK(rep["cohomology"]["derived"]["h"] == json({6, 0, 0, 0}));
  CHECK(rep["cohomology"]["bound_holds"] == true);
  CHECK(rep["diagram"]["sign"] == -1);
  CHECK(rep["status"]["passed"] == true);
  CHECK(fs::exists(out / "timings.json"));
  CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("regularity r = p is a user error") {
  fs::path cfg = write_config("badreg", {{"J", 1}, {"n", 2}, {"family", "spline"}, {"p", 3}, {"r", 3}, {"cells", 2}});
  Run r = forge("run " + cfg.string() + " --out " + scratch("badreg_out").string());
  CHECK(r.code == 2);
  CHECK(r.err.find("regularity") != std::string::npos);
  CHECK(r.err.find("r <= p - 1") != std::string::npos);
}

TEST_CASE("schema violations exit with code 2") {
  fs::path out = scratch("schema_out");
  CHECK(forge("run " + write_config("unknown", {{"J", 1}, {"n", 1}, {"family", "spline"}, {"p", 3}, {"r", 1},
                                                {"cells", 1}, {"colour", "red"}})
                           .string() +
              " --out " + out.string())
            .code == 2);
  CHECK(forge("run " + write_config("nocells", {{"J", 1}, {"n", 1}, {"family", "spline"}, {"p", 3}, {"r", 1}}).string() +
              " --out " + out.string())
            .code == 2);
  CHECK(forge("run " + write_config("floatbreak", {{"J", 1}, {"n", 1}, {"family", "spline"}, {"p", 3}, {"r", 1},
                                                   {"breakpoints", {0, 0.5, 1}}})
                           .string() +
              " --out " + out.string())
            .code == 2);
  fs::path broken = scratch("broken.json");
  std::ofstream(broken) << "{ not json";
  CHECK(forge("run " + broken.string() + " --out " + out.string()).code == 2);
  CHECK(forge("run /nonexistent/config.json --out " + out.string()).code == 2);
  CHECK(forge("preset maxwell --out " + out.string()).code == 2);
  CHECK(forge("frobnicate").code == 2);
  CHECK(forge("preset hessian2d --out " + out.string(), "BGG_FORGE_THREADS=zero").code == 2);
}

TEST_CASE("one-dimensional verify-diagram echoes the diagram") {
  fs::path cfg = write_config("oned", {{"J", 1},
                                       {"n", 1},
                                       {"family", "spline"},
                                       {"p", 3},
                                       {"r", 2},
                                       {"breakpoints", {"0", "1/3", "1"}},
                                       {"task", "verify-diagram"}});
  fs::path out = scratch("oned_out");
  Run r = forge("run " + cfg.string() + " --out " + out.string());
  CHECK(r.code == 0);
  json rep = read_json(out / "report.json");
  const json& d = rep["diagram"];
  CHECK(d["verified"] == true);
  CHECK(d["top_row"].size() == 2);
  CHECK(d["bottom_row"].size() == 2);
  CHECK(d["rank_pattern"].size() == 1);
  CHECK(d["rank_pattern"][0]["injective"] == true);
  CHECK(d["rank_pattern"][0]["surjective"] == true);
  CHECK(rep["config"]["breakpoints"] == json({{"0", "1/3", "1"}}));
  CHECK(d["top_row"][0]["dim"] == spline_dim(3, 2, 2));
  CHECK(d["bottom_row"][1]["dim"] == spline_dim(1, 0, 2));
}

TEST_CASE("export naming, exact sidecars and the 1D identity S") {
  fs::path cfg = write_config("oned_export", {{"J", 1}, {"n", 1}, {"family", "spline"}, {"p", 3}, {"r", 2},
                                              {"cells", 2}, {"task", "derive"}});
  fs::path out = scratch("oned_export_out");
  Run r = forge("run " + cfg.string() + " --out " + out.string() + " --export");
  REQUIRE(r.code == 0);
  for (const char* f : {"d_top_0", "d_bot_0", "S_0", "D_0", "E_0", "E_1"}) {
    CAPTURE(f);
    CHECK(fs::exists(out / (std::string(f) + ".mtx")));
    CHECK(fs::exists(out / (std::string(f) + ".mtx.q")));
  }
  QSparse s = read_rational_sidecar(out / "S_0.mtx.q");
  CHECK(s == QSparse::identity(s.rows()));
  json manifest = read_json(out / "manifest.json");
  CHECK(manifest["matrices"]["D_0.mtx"]["rows"] == spline_dim(1, 0, 2));
  CHECK(manifest["report"]["sha256"].get<std::string>().size() == 64);
}

TEST_CASE("hessian export: dimensions and round trip") {
  fs::path out = scratch("hessian_out");
  Run r = forge("preset hessian3d --p 3 --r 1 --cells 2 --export --out " + out.string());
  REQUIRE(r.code == 0);
  // Υ^1 = symmetric part of Λ^{1,1}: diagonal components lose two orders in one
  // direction, off-diagonal ones lose one order in two directions.
  const int d0 = spline_dim(3, 1, 2), d1 = spline_dim(2, 0, 2), d2 = spline_dim(1, -1, 2);
  const int sym_dim = 3 * d2 * d0 * d0 + 3 * d1 * d1 * d0;
  QSparse D0 = read_rational_sidecar(out / "D_0.mtx.q");
  CHECK(D0.rows() == sym_dim);
  CHECK(D0.cols() == d0 * d0 * d0);
  std::vector<QSparse> D;
  std::vector<SparseMatrix<double>> Df;
  for (int i = 0; i < 3; ++i) {
    D.push_back(read_rational_sidecar(out / ("D_" + std::to_string(i) + ".mtx.q")));
    Df.push_back(read_matrix_market(out / ("D_" + std::to_string(i) + ".mtx")));
  }
  for (int i = 0; i + 1 < 3; ++i) {
    CHECK((D[i + 1] * D[i]).is_zero_matrix());
    SparseMatrix<double> prod = Df[i + 1] * Df[i];
    double worst = 0;
    for (const auto& t : prod.triplets()) worst = std::max(worst, std::abs(t.value));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("repeated runs are byte-identical") {
  fs::path cfg = write_config("det", {{"preset", "divdiv3d"}, {"family", "fe"}, {"p", 3}, {"r", 1}, {"cells", 1},
                                      {"task", "cohomology"}, {"export", true}});
  fs::path a = scratch("det_a"), b = scratch("det_b");
  REQUIRE(forge("run " + cfg.string() + " --out " + a.string(), "BGG_FORGE_THREADS=1").code == 0);
  REQUIRE(forge("run " + cfg.string() + " --out " + b.string(), "BGG_FORGE_THREADS=3").code == 0);
  int compared = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    const std::string name = e.path().filename().string();
    if (name == "timings.json" || name == "bgg-forge.lock") continue;
    CAPTURE(name);
    CHECK(slurp(e.path()) == slurp(b / name));
    ++compared;
  }
  CHECK(compared > 20);
}

TEST_CASE("float arithmetic and the preset subcommand") {
  fs::path out = scratch("stress_out");
  Run r = forge("preset stress2d --p 3 --r 1 --cells 2 --arithmetic float --export --out " + out.string());
  CHECK(r.code == 0);
  json rep = read_json(out / "report.json");
  CHECK(rep["cohomology"]["derived"]["h"] == json({3, 0, 0}));
  CHECK(rep["cohomology"]["arithmetic"] == "float");
  CHECK(fs::exists(out / "D_0.mtx"));
  CHECK_FALSE(fs::exists(out / "D_0.mtx.q"));
  // Stale files of an earlier run do not survive.
  Run again = forge("preset stress2d --p 3 --r 1 --cells 2 --task verify-diagram --out " + out.string());
  CHECK(again.code == 0);
  CHECK_FALSE(fs::exists(out / "D_0.mtx"));
}

TEST_CASE("interpolation suite task") {
  fs::path out = scratch("interp_out");
  Run r = forge("preset hessian2d --family fe --p 3 --r 1 --cells 2 --task interp-suite --out " + out.string());
  CHECK(r.code == 0);
  json rep = read_json(out / "report.json");
  CHECK(rep["interpolation"]["entries"].size() > 10);
  for (const auto& n : rep["interpolation"]["operator_norms"]["top_row"]) CHECK(n["norm"].get<double>() >= 1.0 - 1e-9);
}

TEST_CASE("a locked output directory is refused") {
  fs::path out = scratch("locked_out");
  fs::create_directories(out);
  const int fd = ::open((out / "bgg-forge.lock").c_str(), O_RDWR | O_CREAT, 0644);
  REQUIRE(fd >= 0);
  REQUIRE(::flock(fd, LOCK_EX | LOCK_NB) == 0);
  Run r = forge("preset hessian2d --task verify-diagram --out " + out.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("locked") != std::string::npos);
  ::close(fd);
  CHECK(forge("preset hessian2d --task verify-diagram --out " + out.string()).code == 0);
}

TEST_CASE("unwritable output is an I/O error") {
  CHECK(forge("preset hessian2d --task verify-diagram --out /proc/bggforge/out").code == 3);
}

TEST_CASE("config parsing") {
  JobConfig c = parse_config({{"J", 2}, {"n", 3}, {"family", "fe"}, {"p", {3, 5, 3}}, {"r", 1},
                              {"breakpoints", {{"0", "1"}, {"0", "2/4", "1"}, {"0", "1/3", "2/3", "1"}}},
                              {"arithmetic", "float"}, {"tol", 1e-9}});
  CHECK(c.params.dirs[1].p == 5);
  CHECK(c.params.dirs[1].breaks == std::vector<Rational>{0, Rational(1, 2), 1});
  CHECK(c.arithmetic.kind == Arithmetic::floating);
  CHECK(c.echo()["breakpoints"][1] == json({"0", "1/2", "1"}));
  CHECK(c.echo()["task"] == "cohomology");
  CHECK_THROWS_AS(parse_config({{"J", 4}, {"n", 3}, {"family", "fe"}, {"p", 3}, {"r", 1}, {"cells", 1}}),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_config({{"J", 1}, {"n", 2}, {"family", "fe"}, {"p", 4}, {"r", 2}, {"cells", 1}}),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_config({{"preset", "hessian3d"}, {"J", 1}, {"family", "spline"}, {"p", 3}, {"r", 1},
                                {"cells", 1}}),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_config({{"J", 1}, {"n", 1}, {"family", "spline"}, {"p", 3}, {"r", 1},
                                {"breakpoints", {"0", "1/2", "1/2", "1"}}}),
                  InvalidArgument);
}
