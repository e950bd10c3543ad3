#include "catdtc_cli/runner.hpp"

#include <fmt/chrono.h>
#include <omp.h>
#include <spdlog/spdlog.h>
#include <spdlog/version.h>
#include <unistd.h>

#include <chrono>
#include <ctime>
#include <iostream>

namespace catdtc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string config_hash(const json& doc) {
  // nlohmann objects iterate in sorted key order, so dump() is canonical.
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(doc.dump())));
  return buf;
}

ArtifactWriter::ArtifactWriter(fs::path final_dir) : final_(std::move(final_dir)) {
  staging_ = final_;
  staging_ += ".partial-" + std::to_string(::getpid());
  fs::remove_all(staging_);
  fs::create_directories(staging_);
}

ArtifactWriter::~ArtifactWriter() {
  if (!committed_) {
    std::error_code ec;
    fs::remove_all(staging_, ec);
  }
}

std::ofstream ArtifactWriter::open(const std::string& name) {
  std::ofstream f(staging_ / name);
  if (!f) throw std::runtime_error("cannot write " + (staging_ / name).string());
  files_.push_back(name);
  return f;
}

void ArtifactWriter::write_json(const std::string& name, const json& j) {
  open(name) << j.dump(2) << '\n';
}

void ArtifactWriter::commit() {
  if (fs::exists(final_)) {
    // Only replace directories that an earlier run produced.
    if (!fs::exists(final_ / "manifest.json"))
      throw std::runtime_error("output directory " + final_.string() + " exists and is not a previous run");
    fs::remove_all(final_);
  }
  fs::rename(staging_, final_);
  committed_ = true;
}

namespace {

std::string utc_timestamp() {
  return fmt::format("{:%FT%TZ}", fmt::gmtime(std::time(nullptr)));
}

json versions() {
  return {{"catdtc", kVersion},
          {"compiler", __VERSION__},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"spdlog", std::to_string(SPDLOG_VER_MAJOR) + "." + std::to_string(SPDLOG_VER_MINOR) + "." +
                         std::to_string(SPDLOG_VER_PATCH)},
          {"openmp", _OPENMP}};
}

}  // namespace

int run_cli(const CliOptions& opts) {
  if (opts.quiet) spdlog::set_level(spdlog::level::warn);

  RunConfig cfg;
  try {
    json doc = read_json_file(opts.config);
    cfg = parse_config(doc);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.output_dir) cfg.output_dir = *opts.output_dir;
    if (cfg.output_dir.empty()) cfg.output_dir = fs::path("runs") / kind_name(cfg.kind);
    check_resources(cfg);
    // Model-level checks (pattern frustration, layout connectivity) that
    // only the library can decide, still before any output is written.
    (void)describe_plan(cfg);
  } catch (const ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid config:\n  " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  if (opts.dry_run) {
    json plan = describe_plan(cfg);
    plan["config_hash"] = config_hash(cfg.source);
    std::cout << plan.dump(2) << '\n';
    return kExitOk;
  }

  if (opts.workers > 0) omp_set_num_threads(opts.workers);
  const std::string started = utc_timestamp();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ArtifactWriter out(cfg.output_dir);
    spdlog::info("{}: writing to {}", kind_name(cfg.kind), cfg.output_dir.string());
    json summary = run_experiment(cfg, out);
    summary["experiment"] = kind_name(cfg.kind);
    summary["seed"] = cfg.seed;
    summary["config_hash"] = config_hash(cfg.source);
    out.write_json("summary.json", summary);
    out.write_json("config.json", cfg.source);

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json manifest = {{"experiment", kind_name(cfg.kind)},
                     {"config_path", opts.config.string()},
                     {"config_hash", config_hash(cfg.source)},
                     {"seed", cfg.seed},
                     {"seed_overridden", opts.seed.has_value()},
                     {"workers", omp_get_max_threads()},
                     {"versions", versions()},
                     {"started_utc", started},
                     {"wall_seconds", seconds}};
    manifest["files"] = out.files();
    out.write_json("manifest.json", manifest);
    out.commit();
    if (cfg.kind == Kind::Analytics) std::cout << summary.dump(2) << '\n';
    spdlog::info("done in {:.2f} s", seconds);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace catdtc::cli
