#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "bggforge/config.hpp"

namespace bgg {

/// Exclusive flock on <dir>/bgg-forge.lock for the lifetime of the object.
/// Throws LockBusy if another process holds it.
class DirectoryLock {
 public:
  explicit DirectoryLock(const std::filesystem::path& dir);
  ~DirectoryLock();
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  int fd_ = -1;
};

std::string sha256_hex(const std::string& bytes);

struct JobResult {
  /// 0 when every requested check passed, 1 otherwise.
  int exit_code = 0;
  std::vector<std::string> failures;
  nlohmann::json report;
  /// Exported matrix files, relative to the output directory.
  std::vector<std::string> files;
};

/// Runs the configured task and writes report.json, manifest.json and
/// timings.json (plus matrices when exporting) into out_dir. Errors of the
/// library propagate as exceptions; failed checks are reported in the result.
JobResult run_job(const JobConfig& config, const std::filesystem::path& out_dir);

}  // namespace bgg
