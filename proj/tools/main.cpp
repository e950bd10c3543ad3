#include <CLI11.hpp>

#include "catdtc_cli/runner.hpp"

int main(int argc, char** argv) {
  using namespace catdtc::cli;
  CLI::App app{"catdtc: batch runner for cat-scar time-crystal experiments"};
  app.set_version_flag("--version", kVersion);

  CliOptions opts;
  std::string out_dir;
  std::uint64_t seed = 0;
  app.add_option("config", opts.config, "Experiment config file (JSON, comments allowed)")
      ->required()
      ->check(CLI::ExistingFile);
  auto* out_opt = app.add_option("-o,--output-dir", out_dir, "Run directory (overrides output.dir)");
  auto* seed_opt = app.add_option("-s,--seed", seed, "Master seed (overrides the config seed)");
  app.add_option("-j,--workers", opts.workers, "Worker threads; 0 keeps the OpenMP default")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("-n,--dry-run", opts.dry_run, "Validate the config and print the plan without running");
  app.add_flag("-q,--quiet", opts.quiet, "Only log warnings and errors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }
  if (*out_opt) opts.output_dir = out_dir;
  if (*seed_opt) opts.seed = seed;
  return run_cli(opts);
}
