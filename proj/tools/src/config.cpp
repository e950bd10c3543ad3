#include "catdtc_cli/config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

namespace catdtc::cli {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Kind, std::string_view>, 10> kKinds{{
    {Kind::GhzVerify, "ghz-verify"},
    {Kind::Mqc, "mqc"},
    {Kind::Parity, "parity"},
    {Kind::Interferometry, "interferometry"},
    {Kind::DtcSpectrum, "dtc-spectrum"},
    {Kind::EaScan, "ea-scan"},
    {Kind::MblScan, "mbl-scan"},
    {Kind::RabiDecay, "rabi-decay"},
    {Kind::Lightcone, "lightcone"},
    {Kind::Analytics, "analytics"},
}};

std::string join(const std::vector<std::string>& v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

// Type-checked conversions; false means the JSON value has the wrong type.
bool convert(const json& j, double& out) {
  if (!j.is_number()) return false;
  out = j.get<double>();
  return true;
}
bool convert(const json& j, int& out) {
  if (!j.is_number_integer()) return false;
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) return false;
  out = static_cast<int>(v);
  return true;
}
bool convert(const json& j, std::uint64_t& out) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) return false;
  out = j.get<std::uint64_t>();
  return true;
}
bool convert(const json& j, bool& out) {
  if (!j.is_boolean()) return false;
  out = j.get<bool>();
  return true;
}
bool convert(const json& j, std::string& out) {
  if (!j.is_string()) return false;
  out = j.get<std::string>();
  return true;
}
template <class T>
bool convert(const json& j, std::vector<T>& out) {
  if (!j.is_array()) return false;
  std::vector<T> v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    if (!convert(j[i], v[i])) return false;
  out = std::move(v);
  return true;
}
template <class T>
bool convert(const json& j, std::optional<T>& out) {
  T v{};
  if (!convert(j, v)) return false;
  out = v;
  return true;
}

template <class T>
constexpr std::string_view type_label() {
  if constexpr (std::is_same_v<T, double> || std::is_same_v<T, std::optional<double>>) return "a number";
  else if constexpr (std::is_same_v<T, int>) return "an integer";
  else if constexpr (std::is_same_v<T, std::uint64_t>) return "a non-negative integer";
  else if constexpr (std::is_same_v<T, bool>) return "true or false";
  else if constexpr (std::is_same_v<T, std::string>) return "a string";
  else if constexpr (std::is_same_v<T, std::vector<double>>) return "an array of numbers";
  else if constexpr (std::is_same_v<T, std::vector<int>>) return "an array of integers";
  else if constexpr (std::is_same_v<T, std::vector<std::string>>) return "an array of strings";
  else return "a value of another type";
}

// Walks one JSON object, remembering which keys were consumed.
class Reader {
 public:
  Reader(const json* node, std::string path, std::vector<std::string>& problems)
      : node_(node), path_(std::move(path)), problems_(&problems) {
    if (node_ && !node_->is_object()) {
      fail("", "must be an object");
      node_ = nullptr;
    }
  }

  bool present() const { return node_ != nullptr; }
  std::vector<std::string>& problems() const { return *problems_; }
  bool has(const std::string& key) const { return node_ && node_->contains(key); }

  template <class T>
  bool read(const std::string& key, T& out) {
    if (!has(key)) return false;
    used_.insert(key);
    if (!convert(node_->at(key), out)) {
      fail(key, "must be " + std::string(type_label<T>()));
      return false;
    }
    return true;
  }

  Reader section(const std::string& key) {
    if (!has(key)) return Reader(nullptr, field(key), *problems_);
    used_.insert(key);
    return Reader(&node_->at(key), field(key), *problems_);
  }

  const json* raw(const std::string& key) {
    if (!has(key)) return nullptr;
    used_.insert(key);
    return &node_->at(key);
  }

  void fail(const std::string& key, const std::string& msg) { problems_->push_back(field(key) + ": " + msg); }

  std::string field(const std::string& key) const {
    if (key.empty()) return path_.empty() ? "<root>" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  void finish() {
    if (!node_) return;
    for (const auto& [k, v] : node_->items())
      if (!used_.contains(k)) fail(k, "unknown field");
  }

 private:
  const json* node_;
  std::string path_;
  std::vector<std::string>* problems_;
  std::set<std::string> used_;
};

bool valid_bits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

void check_pattern(Reader& r, const std::string& key, const std::string& bits, int n) {
  if (bits.empty()) return;
  if (!valid_bits(bits)) {
    r.fail(key, "must contain only '0' and '1'");
  } else if (n > 0 && static_cast<int>(bits.size()) != n) {
    r.fail(key, "length " + std::to_string(bits.size()) + " does not match qstate.n = " + std::to_string(n));
  }
}

void check_probability(Reader& r, const std::string& key, double p) {
  if (!(p >= 0.0 && p <= 1.0)) r.fail(key, "must lie in [0, 1]");
}

// Which top-level sections each experiment reads.
std::set<std::string> sections_for(Kind k) {
  switch (k) {
    case Kind::GhzVerify: return {"qstate", "circuits", "noise", "sampling"};
    case Kind::Mqc: return {"qstate", "circuits", "noise", "sampling"};
    case Kind::Parity: return {"qstate", "circuits", "noise", "sampling"};
    case Kind::Interferometry: return {"qstate", "circuits", "noise", "sampling"};
    case Kind::DtcSpectrum: return {"qstate", "circuits", "spectral"};
    case Kind::EaScan: return {"circuits", "spectral"};
    case Kind::MblScan: return {"qstate", "circuits", "spectral"};
    case Kind::RabiDecay: return {"qstate", "analytics", "sampling"};
    case Kind::Lightcone: return {"qstate", "circuits", "noise", "sampling", "obs"};
    case Kind::Analytics: return {"analytics"};
  }
  return {};
}

void parse_layout(Reader r, LayoutConfig& out, int n) {
  r.read("rows", out.rows);
  r.read("cols", out.cols);
  r.read("mask", out.mask);
  r.finish();
  if (!r.present()) return;
  if (!out.mask.empty()) {
    if (r.has("rows") || r.has("cols")) r.fail("mask", "give either mask or rows/cols, not both");
    const std::size_t w = out.mask.front().size();
    int active = 0;
    for (const auto& row : out.mask) {
      if (row.size() != w) r.fail("mask", "rows must have equal length");
      for (char c : row) {
        if (c == '#') ++active;
        else if (c != '.') r.fail("mask", "use '#' for active and '.' for inactive sites");
      }
    }
    if (n > 0 && active != n) r.fail("mask", std::to_string(active) + " active sites but qstate.n = " + std::to_string(n));
    return;
  }
  if (out.rows < 1 || out.cols < 1) {
    r.fail("rows", "rows and cols must both be >= 1");
  } else if (n > 0 && out.rows * out.cols != n) {
    r.fail("rows", "rows * cols = " + std::to_string(out.rows * out.cols) + " but qstate.n = " + std::to_string(n));
  }
}

void parse_floquet(Reader r, FloquetConfig& f, int n) {
  double lambda = 0.0;
  if (r.read("lambda", lambda)) {
    if (r.has("lambda1") || r.has("lambda2")) r.fail("lambda", "give lambda or lambda1/lambda2, not both");
    f.lambda1 = f.lambda2 = lambda;
  }
  r.read("lambda1", f.lambda1);
  r.read("lambda2", f.lambda2);
  r.read("phi1", f.phi1);
  r.read("phi2", f.phi2);
  r.read("J", f.J);
  r.read("T", f.T);
  r.read("landscape", f.landscape);
  r.read("target", f.target);
  r.read("j_signs", f.j_signs);
  r.finish();
  if (!(f.T > 0.0)) r.fail("T", "must be positive");
  static const std::set<std::string> kLandscapes{"uniform", "compatible", "target", "signs"};
  if (!kLandscapes.contains(f.landscape)) {
    r.fail("landscape", "must be one of uniform, compatible, target, signs");
    return;
  }
  if (f.landscape == "target") {
    if (f.target.empty()) r.fail("target", "required when landscape is 'target'");
    check_pattern(r, "target", f.target, n);
  } else if (r.has("target")) {
    r.fail("target", "only used when landscape is 'target'");
  }
  if (f.landscape == "signs") {
    if (n > 0 && static_cast<int>(f.j_signs.size()) != n) r.fail("j_signs", "needs one entry per ring bond (qstate.n)");
    for (int s : f.j_signs)
      if (s != 1 && s != -1) {
        r.fail("j_signs", "entries must be +1 or -1");
        break;
      }
  } else if (r.has("j_signs")) {
    r.fail("j_signs", "only used when landscape is 'signs'");
  }
}

void parse_noise(Reader r, NoiseConfig& c, int n) {
  r.read("model", c.model);
  r.read("ep_1q", c.ep_1q);
  r.read("ep_2q", c.ep_2q);
  r.read("t1", c.t1);
  r.read("t2se", c.t2se);
  r.read("relaxation", c.relaxation);
  r.read("idle", c.idle);
  r.read("cycle_depolarizing", c.cycle_depolarizing);
  Reader ro = r.section("readout");
  ro.read("f0", c.readout_f0);
  ro.read("f1", c.readout_f1);
  ro.finish();
  r.finish();

  static const std::set<std::string> kModels{"none", "table", "depolarizing", "custom"};
  if (!kModels.contains(c.model)) r.fail("model", "must be one of none, table, depolarizing, custom");
  check_probability(r, "ep_1q", c.ep_1q);
  check_probability(r, "ep_2q", c.ep_2q);
  check_probability(r, "cycle_depolarizing", c.cycle_depolarizing);
  if (!(c.t1 > 0.0)) r.fail("t1", "must be positive");
  if (!(c.t2se > 0.0)) r.fail("t2se", "must be positive");
  if (c.model == "table") {
    const auto table = ghz_gate_error_table();
    const bool found = std::any_of(table.begin(), table.end(), [n](const GateErrorRow& row) { return row.n == n; });
    if (!found) {
      std::vector<std::string> ns;
      for (const auto& row : table) ns.push_back(std::to_string(row.n));
      r.fail("model", "no tabulated gate errors for N = " + std::to_string(n) + " (tabulated: " + join(ns, ", ") + ")");
    }
    if (r.has("ep_1q") || r.has("ep_2q")) r.fail("model", "'table' takes its rates from the table; drop ep_1q/ep_2q");
  }
  if (ro.present()) {
    if (!c.readout_f0 || !c.readout_f1) ro.fail("", "needs both f0 and f1");
    if (c.readout_f0) check_probability(ro, "f0", *c.readout_f0);
    if (c.readout_f1) check_probability(ro, "f1", *c.readout_f1);
    if (c.readout_f0 && c.readout_f1 && *c.readout_f0 + *c.readout_f1 <= 1.0)
      ro.fail("", "f0 + f1 must exceed 1 for the confusion matrix to be invertible");
  }
}

void parse_sampling(Reader r, SamplingConfig& s) {
  r.read("n_traj", s.n_traj);
  r.read("groups", s.groups);
  r.read("cycles", s.cycles);
  r.read("grid", s.grid);
  r.read("M", s.M);
  r.read("n_gammas", s.n_gammas);
  r.read("shots", s.shots);
  r.read("noisy_reversal", s.noisy_reversal);
  r.finish();
  if (s.n_traj < 1) r.fail("n_traj", "must be >= 1");
  if (s.groups < 1 || s.groups > s.n_traj) r.fail("groups", "must lie in [1, n_traj]");
  if (s.cycles < 0) r.fail("cycles", "must be >= 0");
  if (s.grid != "sparse" && s.grid != "dense") r.fail("grid", "must be 'sparse' or 'dense'");
  if (s.M < 0) r.fail("M", "must be >= 0 (0 picks 2N + 2)");
  if (s.n_gammas < 4) r.fail("n_gammas", "must be >= 4");
}

void parse_spectral(Reader r, SpectralConfig& s, int n) {
  r.read("target", s.target);
  r.read("with_ea", s.with_ea);
  r.read("allow_large", s.allow_large);
  r.read("ensemble", s.ensemble);
  r.read("lambdas", s.lambdas);
  r.read("sizes", s.sizes);
  r.read("n_samples", s.n_samples);
  r.read("J_mean", s.J_mean);
  r.read("W", s.W);
  r.finish();
  check_pattern(r, "target", s.target, n);
  if (s.ensemble != "scar" && s.ensemble != "mbl") r.fail("ensemble", "must be 'scar' or 'mbl'");
  if (s.n_samples < 1) r.fail("n_samples", "must be >= 1");
  if (!(s.W >= 0.0)) r.fail("W", "must be >= 0");
  for (int k : s.sizes)
    if (k < 4 || k > kDenseCap) {
      r.fail("sizes", "each size must lie in [4, " + std::to_string(kDenseCap) + "]");
      break;
    }
}

void parse_analytics(Reader r, AnalyticsConfig& a) {
  if (Reader ipr = r.section("ipr"); ipr.present()) {
    a.ipr = true;
    Reader fit = ipr.section("fit");
    fit.read("lambda", a.fit_lambda);
    fit.read("n", a.fit_n);
    fit.read("ipr", a.fit_ipr);
    fit.finish();
    if (!(a.fit_ipr > 0.0 && a.fit_ipr <= 0.5)) fit.fail("ipr", "must lie in (0, 0.5]");
    if (!(a.fit_lambda > 0.0)) fit.fail("lambda", "must be positive");
    if (a.fit_n < 1) fit.fail("n", "must be >= 1");
    if (const json* p = ipr.raw("predict")) {
      if (!p->is_array()) {
        ipr.fail("predict", "must be an array of {lambda, n} objects");
      } else {
        for (std::size_t i = 0; i < p->size(); ++i) {
          Reader item(&(*p)[i], ipr.field("predict") + "[" + std::to_string(i) + "]", ipr.problems());
          IprPoint pt;
          if (!item.read("lambda", pt.lambda)) item.fail("lambda", "required");
          if (!item.read("n", pt.n)) item.fail("n", "required");
          item.finish();
          if (pt.n < 1) item.fail("n", "must be >= 1");
          a.predict.push_back(pt);
        }
      }
    }
    ipr.finish();
  }
  if (Reader rabi = r.section("rabi"); rabi.present()) {
    a.rabi = true;
    rabi.read("lambda1", a.rabi_lambda1);
    rabi.read("phi1", a.rabi_phi1);
    rabi.read("phi2", a.rabi_phi2);
    rabi.read("e_p_dtc", a.e_p_dtc);
    rabi.read("e_p_rabi", a.e_p_rabi);
    rabi.read("n", a.envelope_n);
    rabi.read("cycles", a.envelope_cycles);
    rabi.finish();
    if (!(a.e_p_dtc >= 0.0 && a.e_p_dtc < 1.0)) rabi.fail("e_p_dtc", "must lie in [0, 1)");
    if (!(a.e_p_rabi >= 0.0 && a.e_p_rabi < 1.0)) rabi.fail("e_p_rabi", "must lie in [0, 1)");
    if (a.envelope_n < 1) rabi.fail("n", "must be >= 1");
    if (a.envelope_cycles < 0) rabi.fail("cycles", "must be >= 0");
  }
  if (Reader bf = r.section("butterfly"); bf.present()) {
    a.butterfly = true;
    bf.read("lambda1", a.bf_lambda1);
    bf.read("lambda2", a.bf_lambda2);
    bf.read("phi2", a.bf_phi2);
    bf.read("J", a.bf_J);
    if (!bf.read("phi1", a.bf_phi1)) bf.fail("phi1", "required: array of phi1 samples");
    bf.finish();
    if (a.bf_phi1.empty() && bf.has("phi1")) bf.fail("phi1", "must not be empty");
  }
  r.finish();
}

void parse_obs(Reader r, ObsConfig& o, int n) {
  r.read("threshold", o.threshold);
  r.read("centers", o.centers);
  r.read("pair_csv", o.pair_csv);
  r.finish();
  if (!(o.threshold > 0.0 && o.threshold < 1.0)) r.fail("threshold", "must lie in (0, 1)");
  for (int c : o.centers)
    if (c < 0 || c >= n) {
      r.fail("centers", "entries must lie in [0, qstate.n)");
      break;
    }
}

}  // namespace

std::string kind_name(Kind k) {
  for (const auto& [kind, name] : kKinds)
    if (kind == k) return std::string(name);
  return "unknown";
}

std::optional<Kind> parse_kind(std::string_view name) {
  for (const auto& [kind, n] : kKinds)
    if (n == name) return kind;
  return std::nullopt;
}

std::vector<std::string> kind_names() {
  std::vector<std::string> out;
  for (const auto& [kind, name] : kKinds) out.emplace_back(name);
  return out;
}

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error("invalid config:\n  " + join(problems, "\n  ")), problems_(std::move(problems)) {}

SpinPattern RunConfig::spin_pattern() const {
  return pattern.empty() ? SpinPattern::neel(n) : SpinPattern::from_string(pattern);
}

FloquetSpec RunConfig::floquet_spec() const {
  FloquetSpec spec = FloquetSpec::uniform(n, floquet.lambda1, floquet.lambda2, floquet.phi1, floquet.phi2);
  spec.J = floquet.J;
  spec.T = floquet.T;
  if (floquet.landscape == "compatible") {
    spec = edit_pattern(spec, spin_pattern());
  } else if (floquet.landscape == "target") {
    spec = edit_pattern(spec, SpinPattern::from_string(floquet.target));
  } else if (floquet.landscape == "signs") {
    spec.j_signs = floquet.j_signs;
  }
  spec.validate();
  return spec;
}

std::optional<NoiseModel> RunConfig::noise_model() const {
  NoiseModel m;
  if (noise.model == "none") return std::nullopt;
  if (noise.model == "table") {
    m = NoiseModel::for_ghz(n);
  } else if (noise.model == "depolarizing") {
    m = NoiseModel::depolarizing(noise.ep_1q, noise.ep_2q);
  } else {
    m.ep_1q = noise.ep_1q;
    m.ep_2q = noise.ep_2q;
    m.relaxation = noise.relaxation;
    m.idle = noise.idle;
  }
  if (noise.model != "depolarizing") {
    m.t1 = noise.t1;
    m.t2se = noise.t2se;
    m.relaxation = noise.relaxation;
    m.idle = noise.idle;
  }
  m.seed = seed;
  return m;
}

std::optional<ReadoutModel> RunConfig::readout_model() const {
  if (!noise.readout_f0 || !noise.readout_f1) return std::nullopt;
  return ReadoutModel::uniform(n, *noise.readout_f0, *noise.readout_f1);
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError({"config: cannot open '" + path.string() + "'"});
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ValidationError({"config: " + std::string(e.what())});
  }
}

RunConfig parse_config(const json& doc) {
  std::vector<std::string> problems;
  RunConfig cfg;
  cfg.source = doc;
  Reader root(&doc, "", problems);
  if (!root.present()) throw ValidationError(std::move(problems));

  std::string kind;
  if (!root.read("experiment", kind)) {
    if (!root.has("experiment")) root.fail("experiment", "required, one of " + join(kind_names(), ", "));
  } else if (auto k = parse_kind(kind)) {
    cfg.kind = *k;
  } else {
    root.fail("experiment", "unknown kind '" + kind + "', expected one of " + join(kind_names(), ", "));
    throw ValidationError(std::move(problems));
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));

  root.read("seed", cfg.seed);
  Reader out = root.section("output");
  std::string dir;
  if (out.read("dir", dir)) cfg.output_dir = dir;
  out.finish();

  const std::set<std::string> allowed = sections_for(cfg.kind);
  for (const char* s : {"qstate", "circuits", "noise", "sampling", "spectral", "analytics", "obs"}) {
    if (root.has(s) && !allowed.contains(s)) root.fail(s, "section not used by experiment '" + kind + "'");
  }

  Reader qs = root.section("qstate");
  if (allowed.contains("qstate")) {
    if (!qs.read("n", cfg.n)) qs.fail("n", "required");
    qs.read("pattern", cfg.pattern);
    qs.finish();
    if (qs.has("n") && cfg.n < 2) qs.fail("n", "must be >= 2");
    check_pattern(qs, "pattern", cfg.pattern, cfg.n);
  }

  Reader circ = root.section("circuits");
  if (allowed.contains("circuits")) {
    Reader lay = circ.section("layout");
    const bool layout_kind = cfg.kind == Kind::GhzVerify || cfg.kind == Kind::Mqc || cfg.kind == Kind::Parity ||
                             cfg.kind == Kind::Interferometry;
    if (lay.present() && !layout_kind) circ.fail("layout", "not used by experiment '" + kind + "'");
    parse_layout(lay, cfg.layout, cfg.n);
    Reader fl = circ.section("floquet");
    const bool floquet_kind = !(cfg.kind == Kind::GhzVerify || cfg.kind == Kind::Mqc || cfg.kind == Kind::Parity);
    if (fl.present() && !floquet_kind) circ.fail("floquet", "not used by experiment '" + kind + "'");
    parse_floquet(fl, cfg.floquet, cfg.n);
    circ.finish();
  }

  if (allowed.contains("noise")) parse_noise(root.section("noise"), cfg.noise, cfg.n);
  if (allowed.contains("sampling")) parse_sampling(root.section("sampling"), cfg.sampling);
  if (allowed.contains("spectral")) parse_spectral(root.section("spectral"), cfg.spectral, cfg.n);
  if (allowed.contains("analytics")) parse_analytics(root.section("analytics"), cfg.analytics);
  if (allowed.contains("obs")) parse_obs(root.section("obs"), cfg.obs, cfg.n);
  root.finish();

  // Cross-section rules.
  if (cfg.kind == Kind::EaScan || cfg.kind == Kind::MblScan) {
    if (cfg.spectral.lambdas.empty()) problems.push_back("spectral.lambdas: required for " + kind);
  }
  if (cfg.kind == Kind::EaScan && cfg.floquet.landscape != "uniform")
    problems.push_back("circuits.floquet.landscape: ea-scan builds its own landscapes; leave it 'uniform'");
  if (cfg.kind == Kind::Analytics && !cfg.analytics.ipr && !cfg.analytics.rabi && !cfg.analytics.butterfly)
    problems.push_back("analytics: give at least one of ipr, rabi, butterfly");
  if (cfg.kind == Kind::RabiDecay && cfg.sampling.cycles % 2 != 0)
    problems.push_back("sampling.cycles: rabi-decay compares at even cycles; use an even count");
  if (cfg.noise.cycle_depolarizing > 0.0 && cfg.kind != Kind::Interferometry)
    problems.push_back("noise.cycle_depolarizing: only used by interferometry");
  if (cfg.sampling.shots > 0 && cfg.kind != Kind::GhzVerify)
    problems.push_back("sampling.shots: readout sampling is only wired into ghz-verify");
  if (cfg.sampling.shots > 0 && !(cfg.noise.readout_f0 && cfg.noise.readout_f1))
    problems.push_back("sampling.shots: needs noise.readout.f0 and f1");

  if (!problems.empty()) throw ValidationError(std::move(problems));
  return cfg;
}

void check_resources(const RunConfig& cfg) {
  std::vector<std::string> problems;
  auto cap = [&](const std::string& field, int value, int limit, const std::string& why) {
    if (value > limit)
      problems.push_back(field + ": " + std::to_string(value) + " exceeds the cap of " + std::to_string(limit) + " (" +
                         why + ")");
  };
  const bool noisy = cfg.noise.model != "none" || cfg.noise.cycle_depolarizing > 0.0;
  switch (cfg.kind) {
    case Kind::GhzVerify:
      cap("qstate.n", cfg.n, noisy || cfg.sampling.shots > 0 ? 20 : 64,
          noisy || cfg.sampling.shots > 0 ? "dense trajectories and readout sampling" : "sparse simulation");
      break;
    case Kind::Mqc:
    case Kind::Parity:
      cap("qstate.n", cfg.n, noisy ? 20 : 24, "dense state vector");
      break;
    case Kind::Interferometry:
      cap("qstate.n", cfg.n, noisy ? 16 : 20, "dense state vector per phase sample");
      break;
    case Kind::DtcSpectrum:
      cap("qstate.n", cfg.n, cfg.spectral.allow_large ? kDenseHardCap : kDenseCap,
          cfg.spectral.allow_large ? "dense Floquet matrix" : "dense Floquet matrix; set spectral.allow_large for up to 14");
      break;
    case Kind::MblScan:
      cap("qstate.n", cfg.n, kDenseCap, "dense diagonalization per sample");
      break;
    case Kind::EaScan:
      break;  // sizes checked at parse time
    case Kind::RabiDecay:
      cap("qstate.n", cfg.n, 24, "dense state vector");
      break;
    case Kind::Lightcone:
      cap("qstate.n", cfg.n, 24, "dense state vector");
      break;
    case Kind::Analytics:
      break;
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

}  // namespace catdtc::cli
