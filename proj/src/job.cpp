#include "bggforge/job.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

#include "bggforge/errors.hpp"
#include "bggforge/interp.hpp"
#include "bggforge/matrix_market.hpp"
#include "bggforge/report.hpp"

namespace bgg {

namespace fs = std::filesystem;
using nlohmann::json;

DirectoryLock::DirectoryLock(const fs::path& dir) {
  const fs::path path = dir / "bgg-forge.lock";
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw IoError("cannot open lock file '" + path.string() + "': " + std::strerror(errno));
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    const int err = errno;
    ::close(fd_);
    fd_ = -1;
    if (err == EWOULDBLOCK) throw LockBusy("output directory '" + dir.string() + "' is locked by another job");
    throw IoError("cannot lock '" + path.string() + "': " + std::strerror(err));
  }
}

DirectoryLock::~DirectoryLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw InternalError("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

namespace {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

class Exporter {
 public:
  Exporter(fs::path dir, bool exact) : dir_(std::move(dir)), exact_(exact) {}

  void add(const std::string& name, const QSparse& m) {
    const std::string file = name + ".mtx";
    const std::string text = matrix_market_text(m, name);
    write_text_file(dir_ / file, text);
    json entry = {{"rows", m.rows()}, {"cols", m.cols()}, {"nnz", m.nnz()}, {"sha256", sha256_hex(text)}};
    files_.push_back(file);
    if (exact_) {
      const std::string side = rational_sidecar_text(m);
      write_text_file(dir_ / (file + ".q"), side);
      entry["exact_sidecar"] = {{"file", file + ".q"}, {"sha256", sha256_hex(side)}};
      files_.push_back(file + ".q");
    }
    manifest_[file] = entry;
  }

  const json& manifest() const { return manifest_; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path dir_;
  bool exact_;
  json manifest_ = json::object();
  std::vector<std::string> files_;
};

void remove_stale_exports(const fs::path& dir) {
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    const bool mtx = name.size() > 4 && name.compare(name.size() - 4, 4, ".mtx") == 0;
    const bool side = name.size() > 6 && name.compare(name.size() - 6, 6, ".mtx.q") == 0;
    if (e.is_regular_file() && (mtx || side)) fs::remove(e.path());
  }
}

json interp_norms(const std::vector<TensorSpaceHandle>& row) {
  json out = json::array();
  for (const auto& s : row) {
    InterpOperator pi = make_interp(s);
    out.push_back({{"k", s->k()}, {"l", s->l()}, {"norm", operator_norm(pi)}});
  }
  return out;
}

}  // namespace

JobResult run_job(const JobConfig& config, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "': " + ec.message());
  DirectoryLock lock(out_dir);
  remove_stale_exports(out_dir);

  JobResult result;
  json& report = result.report;
  json timings = json::object();
  Stopwatch total, phase;
  auto fail = [&](const std::string& what) { result.failures.push_back(what); };

  report["config"] = config.echo();
  const TensorParams& tp = config.params;

  BggDiagram g = assemble_diagram(tp, config.J);
  timings["assemble"] = phase.lap();
  report["diagram"] = to_json(g);
  for (const auto& c : g.checks)
    if (!c.passed) fail("condition:" + c.kind + "@" + std::to_string(c.index));

  const bool wants_complex = config.task == Task::derive || config.task == Task::cohomology;
  std::optional<BggComplex> complex;
  if (wants_complex && g.verified()) {
    complex = derive_complex(g);
    complex->name = config.preset ? to_string(*config.preset) : "J=" + std::to_string(config.J);
    const ProxyConvention conv = config.preset ? preset_info(*config.preset).convention : ProxyConvention::standard;
    report["complex"] = to_json(*complex, space_tables(*complex, conv));
    for (std::size_t i = 0; i < complex->composition_zero.size(); ++i)
      if (!complex->composition_zero[i]) fail("complex:composition@" + std::to_string(i));
    timings["derive"] = phase.lap();
  }

  if (config.task == Task::cohomology && complex) {
    CohomologyReport r = cohomology(g, *complex, config.arithmetic);
    report["cohomology"] = to_json(r);
    for (std::size_t i = 0; i < r.bound_ok.size(); ++i)
      if (!r.bound_ok[i]) fail("cohomology:bound@" + std::to_string(i));
    if (!r.euler_ok) fail("cohomology:euler");
    if (!r.rows_expected) fail("cohomology:input-rows");
    if (r.indeterminate) fail("cohomology:rank-indeterminate");
    WitnessCheck w = check_kernel_witnesses(g, *complex);
    report["kernel_witnesses"] = to_json(w);
    if (!w.all_in_kernel || w.independent != w.count) fail("cohomology:kernel-witnesses");
    timings["cohomology"] = phase.lap();
  }

  if (config.task == Task::interp_suite) {
    json entries = json::array();
    for (const auto& e : run_interp_suite(tp, config.J, config.seed, config.arithmetic.tol)) {
      entries.push_back(to_json(e));
      if (!e.passed)
        fail("interp:" + e.check + "/" + e.sample + "@(" + std::to_string(e.k) + "," + std::to_string(e.l) + ")");
    }
    report["interpolation"] = {{"entries", entries},
                               {"operator_norms", {{"top_row", interp_norms(g.top)}, {"bottom_row", interp_norms(g.bottom)}}}};
    timings["interp"] = phase.lap();
  }

  result.exit_code = result.failures.empty() ? 0 : 1;
  report["status"] = {{"passed", result.failures.empty()}, {"failures", result.failures}, {"exit_code", result.exit_code}};

  json manifest = json::object();
  if (config.export_matrices) {
    Exporter ex(out_dir, config.arithmetic.kind == Arithmetic::exact);
    for (int k = 0; k < g.n; ++k) {
      ex.add("d_top_" + std::to_string(k), g.d_top[k].matrix);
      ex.add("d_bot_" + std::to_string(k), g.d_bottom[k].matrix);
      ex.add("S_" + std::to_string(k), g.S[k].matrix);
    }
    if (complex) {
      for (std::size_t i = 0; i < complex->operators.size(); ++i) ex.add("D_" + std::to_string(i), complex->operators[i]);
      for (const auto& s : complex->spaces) ex.add("E_" + std::to_string(s.index), s.embedding);
    }
    manifest["matrices"] = ex.manifest();
    result.files = ex.files();
    timings["export"] = phase.lap();
  }

  const std::string report_text = serialize(report);
  write_text_file(out_dir / "report.json", report_text);
  manifest["report"] = {{"file", "report.json"}, {"sha256", sha256_hex(report_text)}};
  write_text_file(out_dir / "manifest.json", serialize(manifest));
  timings["total"] = total.lap();
  write_text_file(out_dir / "timings.json", serialize(timings));
  return result;
}

}  // namespace bgg
