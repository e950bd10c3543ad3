#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "catdtc/catdtc.hpp"

namespace catdtc::cli {

enum class Kind {
  GhzVerify,
  Mqc,
  Parity,
  Interferometry,
  DtcSpectrum,
  EaScan,
  MblScan,
  RabiDecay,
  Lightcone,
  Analytics,
};

std::string kind_name(Kind k);
std::optional<Kind> parse_kind(std::string_view name);
std::vector<std::string> kind_names();

// Carries every field-level problem found in one validation pass.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct LayoutConfig {
  int rows = 0;  // 0: a 1 x N line
  int cols = 0;
  std::vector<std::string> mask;  // '#' active, '.' inactive; overrides rows/cols
};

struct FloquetConfig {
  double lambda1 = 0.05;
  double lambda2 = 0.05;
  double phi1 = -kPi / 2.0;
  double phi2 = kPi / 2.0 - 0.6;
  double J = 1.0;
  double T = 1.0;
  std::string landscape = "uniform";  // uniform | compatible | target | signs
  std::string target;                 // landscape == target
  std::vector<int> j_signs;           // landscape == signs
};

struct NoiseConfig {
  std::string model = "none";  // none | table | depolarizing | custom
  double ep_1q = 0.0;
  double ep_2q = 0.0;
  double t1 = kPlaceholderT1;
  double t2se = kPlaceholderT2se;
  bool relaxation = true;
  bool idle = true;
  double cycle_depolarizing = 0.0;  // interferometry only
  std::optional<double> readout_f0;
  std::optional<double> readout_f1;
};

struct SamplingConfig {
  int n_traj = 1000;
  int groups = 5;
  int cycles = 10;
  std::string grid = "sparse";  // sparse | dense
  int M = 0;
  int n_gammas = 64;
  std::uint64_t shots = 0;  // readout sampling; 0 disables
  bool noisy_reversal = true;
};

struct SpectralConfig {
  std::string target;  // defaults to qstate.pattern
  bool with_ea = false;
  bool allow_large = false;
  std::string ensemble = "scar";  // ea-scan: scar | mbl
  std::vector<double> lambdas;
  std::vector<int> sizes{6, 8, 10};
  int n_samples = 100;
  double J_mean = kPi / 4.0;
  double W = kPi / 4.0;
};

struct IprPoint {
  double lambda = 0.0;
  int n = 0;
};

struct AnalyticsConfig {
  // IPR perturbation model
  bool ipr = false;
  double fit_lambda = 0.05;
  int fit_n = 8;
  double fit_ipr = 0.481725;
  std::vector<IprPoint> predict;
  // Rabi detuning and envelopes
  bool rabi = false;
  double rabi_lambda1 = 0.05;
  double rabi_phi1 = -1.57008;
  double rabi_phi2 = 0.97;
  double e_p_dtc = kDtcErrorRate;
  double e_p_rabi = kRabiErrorRate;
  int envelope_n = 36;
  int envelope_cycles = 30;
  // Butterfly velocity
  bool butterfly = false;
  double bf_lambda1 = 0.05;
  double bf_lambda2 = 0.05;
  double bf_phi2 = 0.97;
  double bf_J = 1.0;
  std::vector<double> bf_phi1;
};

struct ObsConfig {
  double threshold = 0.5;
  std::vector<int> centers;
  bool pair_csv = true;
};

struct RunConfig {
  Kind kind = Kind::GhzVerify;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir;
  int n = 0;
  std::string pattern;  // empty: Neel
  LayoutConfig layout;
  FloquetConfig floquet;
  NoiseConfig noise;
  SamplingConfig sampling;
  SpectralConfig spectral;
  AnalyticsConfig analytics;
  ObsConfig obs;
  nlohmann::json source;  // the parsed document, for hashing

  SpinPattern spin_pattern() const;
  FloquetSpec floquet_spec() const;
  std::optional<NoiseModel> noise_model() const;
  std::optional<ReadoutModel> readout_model() const;
};

// Comments (// and /* */) are accepted in config files.
nlohmann::json read_json_file(const std::filesystem::path& path);

// Throws ValidationError listing every bad or unknown field.
RunConfig parse_config(const nlohmann::json& doc);

// Resource caps per experiment, checked after parsing.
void check_resources(const RunConfig& cfg);

}  // namespace catdtc::cli
