#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "catdtc_cli/config.hpp"

namespace catdtc::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitRuntime = 2 };

std::uint64_t fnv1a64(std::string_view bytes);
// Hash of the canonical (sorted-key, compact) dump of the config.
std::string config_hash(const nlohmann::json& doc);

// Collects run outputs in a staging directory that is renamed into place
// only when the run succeeds.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path final_dir);
  ~ArtifactWriter();
  ArtifactWriter(const ArtifactWriter&) = delete;
  ArtifactWriter& operator=(const ArtifactWriter&) = delete;

  std::ofstream open(const std::string& name);
  void write_json(const std::string& name, const nlohmann::json& j);
  const std::vector<std::string>& files() const { return files_; }
  const std::filesystem::path& final_dir() const { return final_; }

  // Moves the staging directory to its final name.
  void commit();

 private:
  std::filesystem::path final_;
  std::filesystem::path staging_;
  std::vector<std::string> files_;
  bool committed_ = false;
};

// Runs one experiment, writing CSVs through `out`; returns the summary.
nlohmann::json run_experiment(const RunConfig& cfg, ArtifactWriter& out);

// Human-readable plan for --dry-run.
nlohmann::json describe_plan(const RunConfig& cfg);

struct CliOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::uint64_t> seed;
  int workers = 0;  // 0 keeps the OpenMP default
  bool dry_run = false;
  bool quiet = false;
};

// Full pipeline behind the executable; returns the process exit code.
int run_cli(const CliOptions& opts);

}  // namespace catdtc::cli
