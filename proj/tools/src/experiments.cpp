#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>

#include "catdtc_cli/runner.hpp"

namespace catdtc::cli {

using nlohmann::json;

namespace {

Layout2D layout_of(const RunConfig& cfg) {
  if (!cfg.layout.mask.empty()) return Layout2D::from_mask(cfg.layout.mask);
  if (cfg.layout.rows > 0) return Layout2D::full(cfg.layout.rows, cfg.layout.cols);
  return Layout2D::full(1, cfg.n);
}

std::string layout_label(const RunConfig& cfg) {
  if (!cfg.layout.mask.empty()) return "mask";
  if (cfg.layout.rows > 0) return std::to_string(cfg.layout.rows) + "x" + std::to_string(cfg.layout.cols);
  return "1x" + std::to_string(cfg.n);
}

Circuit prep_circuit(const RunConfig& cfg, const SpinPattern& pattern) {
  return compile(generate_ghz_circuit(layout_of(cfg), pattern).circuit);
}

double ghz_fidelity_of(const StateVector& s, const SpinPattern& p) {
  return 0.5 * std::norm(s[p.index()] + s[p.complement().index()]);
}

json estimate_json(const McEstimate& e) {
  return {{"mean", e.mean},
          {"std_error", e.std_error},
          {"n_traj", e.n_traj},
          {"group_means", e.group_means},
          {"group_seeds", e.group_seeds}};
}

// Trajectory-averaged basis probabilities, summed in index order.
std::vector<double> averaged_probabilities(const Circuit& c, const NoiseModel& model, int n_traj,
                                           std::uint64_t seed) {
  const Rng root(seed);
  std::vector<double> acc(std::size_t{1} << c.n_qubits, 0.0);
  for (int i = 0; i < n_traj; ++i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    const StateVector s = mc_trajectory(c, model, rng);
    const auto p = basis_probabilities(s);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += p[k];
  }
  for (double& v : acc) v /= n_traj;
  return acc;
}

// ------------------------------------------------------------------ kinds

json run_ghz_verify(const RunConfig& cfg, ArtifactWriter& out) {
  const SpinPattern pattern = cfg.spin_pattern();
  const GhzPlan plan = generate_ghz_circuit(layout_of(cfg), pattern);
  const Circuit comp = compile(plan.circuit);

  SparseState s(cfg.n);
  execute(comp, s);
  const double fid =
      0.5 * std::norm(s.amplitude(pattern.index()) + s.amplitude(pattern.complement().index()));
  spdlog::info("ghz-verify: N={} depth={} CZ layers={} fidelity={:.12f}", cfg.n, comp.depth(),
               comp.two_qubit_layers(), fid);

  out.open("circuit.txt") << to_text(comp);
  {
    auto f = out.open("qubits.csv");
    f << "qubit,row,col,parent,cnot_layer\n";
    for (std::size_t q = 0; q < plan.qubits.size(); ++q)
      f << q << ',' << plan.qubits[q].row << ',' << plan.qubits[q].col << ',' << plan.parent[q] << ','
        << plan.layer_of[q] << '\n';
  }
  {
    auto f = out.open("layers.csv");
    f << "layer,gates,two_qubit\n";
    for (std::size_t l = 0; l < comp.layers.size(); ++l) {
      const bool tq = std::any_of(comp.layers[l].begin(), comp.layers[l].end(), [](const Gate& g) { return g.two_qubit(); });
      f << l << ',' << comp.layers[l].size() << ',' << (tq ? 1 : 0) << '\n';
    }
  }

  json summary = {{"n", cfg.n},
                  {"pattern", pattern.str()},
                  {"layout", layout_label(cfg)},
                  {"cnot_layers", plan.cnot_layers},
                  {"eccentricity", plan.eccentricity},
                  {"compiled_depth", comp.depth()},
                  {"cz_layers", comp.two_qubit_layers()},
                  {"gate_count", comp.gate_count()},
                  {"fidelity", fid},
                  {"sparse_support", s.support()}};

  const auto model = cfg.noise_model();
  if (model) {
    const McEstimate e = mc_expectation(
        comp, *model, [&](const StateVector& st) { return ghz_fidelity_of(st, pattern); }, cfg.sampling.n_traj,
        cfg.seed, cfg.sampling.groups);
    spdlog::info("ghz-verify: noisy fidelity {:.5f} +- {:.5f}", e.mean, e.std_error);
    summary["noisy_fidelity"] = estimate_json(e);
    summary["noise"] = {{"ep_1q", model->ep_1q}, {"ep_2q", model->ep_2q}, {"t1", model->t1},
                        {"t2se", model->t2se}, {"relaxation", model->relaxation}, {"idle", model->idle}};
  }

  if (cfg.sampling.shots > 0) {
    const ReadoutModel ro = *cfg.readout_model();
    std::vector<double> probs;
    if (model) {
      probs = averaged_probabilities(comp, *model, cfg.sampling.n_traj, cfg.seed);
    } else {
      StateVector d(cfg.n);
      execute(comp, d);
      probs = basis_probabilities(d);
    }
    Rng rng = Rng(cfg.seed).split(0x7265616430ull);
    const auto counts = apply_readout_noise(probs, ro, rng, cfg.sampling.shots);
    const ReadoutCorrection corr = correct_truncated(counts, ro);
    const auto dense = corr.dense(cfg.n);
    const double shots = static_cast<double>(cfg.sampling.shots);
    const auto s_idx = pattern.index();
    const auto b_idx = pattern.complement().index();
    summary["readout"] = {{"shots", cfg.sampling.shots},
                          {"raw_P_s", counts[s_idx] / shots},
                          {"raw_P_sbar", counts[b_idx] / shots},
                          {"corrected_P_s", dense[s_idx]},
                          {"corrected_P_sbar", dense[b_idx]},
                          {"rcond", corr.rcond}};
    auto f = out.open("readout.csv");
    f << "basis,bits,raw,corrected\n" << std::setprecision(17);
    for (std::size_t k = 0; k < corr.basis.size(); ++k) {
      const auto b = corr.basis[k];
      f << b << ',' << SpinPattern::from_index(b, cfg.n).str() << ',' << counts[b] / shots << ','
        << corr.probabilities[k] << '\n';
    }
  }
  return summary;
}

json run_mqc(const RunConfig& cfg, ArtifactWriter& out) {
  const SpinPattern pattern = cfg.spin_pattern();
  const Circuit prep = prep_circuit(cfg, pattern);
  const auto model = cfg.noise_model();
  MqcOptions o;
  o.noise = model ? &*model : nullptr;
  o.noisy_reversal = cfg.sampling.noisy_reversal;
  o.n_traj = cfg.sampling.n_traj;
  o.seed = cfg.seed;
  const GridKind grid = cfg.sampling.grid == "dense" ? GridKind::Dense : GridKind::Sparse;
  const MqcTrace trace = mqc_run(prep, pattern, grid, o);
  const MqcSpectrum spec = mqc_fourier(trace);

  double ps = 0.0, pb = 0.0;
  json pops;
  if (model) {
    const auto est_s = mc_expectation(
        prep, *model, [&](const StateVector& s) { return std::norm(s[pattern.index()]); }, cfg.sampling.n_traj,
        cfg.seed, cfg.sampling.groups);
    const auto est_b = mc_expectation(
        prep, *model, [&](const StateVector& s) { return std::norm(s[pattern.complement().index()]); },
        cfg.sampling.n_traj, cfg.seed, cfg.sampling.groups);
    ps = est_s.mean;
    pb = est_b.mean;
    pops = {{"P_s", estimate_json(est_s)}, {"P_sbar", estimate_json(est_b)}};
  } else {
    StateVector s(cfg.n);
    execute(prep, s);
    ps = std::norm(s[pattern.index()]);
    pb = std::norm(s[pattern.complement().index()]);
  }
  const GhzFidelityReport rep = ghz_fidelity(ps, pb, spec);
  spdlog::info("mqc: K_f(N)={:.6f} K_f(0)={:.6f} F={:.6f}", spec.at(cfg.n), spec.at(0), rep.F);

  {
    auto f = out.open("mqc_trace.csv");
    write_csv(f, trace);
  }
  {
    auto f = out.open("mqc_spectrum.csv");
    write_csv(f, spec, grid, cfg.seed);
  }
  json summary = {{"n", cfg.n},
                  {"pattern", pattern.str()},
                  {"grid", grid_name(grid)},
                  {"n_samples", trace.n_samples()},
                  {"K_f_N", spec.at(cfg.n)},
                  {"K_f_0", spec.at(0)},
                  {"P_s", rep.P_s},
                  {"P_sbar", rep.P_sbar},
                  {"offdiag", rep.offdiag},
                  {"fidelity", rep.F}};
  if (model) summary["populations"] = pops;
  return summary;
}

json run_parity(const RunConfig& cfg, ArtifactWriter& out) {
  const SpinPattern pattern = cfg.spin_pattern();
  const Circuit prep = prep_circuit(cfg, pattern);
  // Two periods of cos(N gamma).
  std::vector<double> gammas(static_cast<std::size_t>(cfg.sampling.n_gammas));
  for (std::size_t k = 0; k < gammas.size(); ++k)
    gammas[k] = 4.0 * kPi * static_cast<double>(k) / (cfg.n * static_cast<double>(gammas.size()));

  std::vector<double> values(gammas.size(), 0.0);
  const auto model = cfg.noise_model();
  int n_traj = 1;
  if (model) {
    n_traj = cfg.sampling.n_traj;
    const Rng root(cfg.seed);
    for (int i = 0; i < n_traj; ++i) {
      Rng rng = root.split(static_cast<std::uint64_t>(i));
      const auto v = parity_scan(mc_trajectory(prep, *model, rng), pattern, gammas);
      for (std::size_t k = 0; k < v.size(); ++k) values[k] += v[k] / n_traj;
    }
  } else {
    StateVector s(cfg.n);
    execute(prep, s);
    values = parity_scan(s, pattern, gammas);
  }
  const ParityFit fit = fit_parity(gammas, values, cfg.n);
  spdlog::info("parity: amplitude={:.6f} phase={:.6f}", fit.amplitude, fit.phase);

  auto f = out.open("parity.csv");
  f << "gamma,value,fit\n" << std::setprecision(17);
  for (std::size_t k = 0; k < gammas.size(); ++k)
    f << gammas[k] << ',' << values[k] << ',' << fit.amplitude * std::cos(cfg.n * gammas[k] + fit.phase) << '\n';
  return {{"n", cfg.n},       {"pattern", pattern.str()}, {"n_gammas", gammas.size()},
          {"n_traj", n_traj}, {"amplitude", fit.amplitude}, {"phase", fit.phase},
          {"coherence", 0.5 * fit.amplitude}};
}

json run_interferometry(const RunConfig& cfg, ArtifactWriter& out) {
  const SpinPattern pattern = cfg.spin_pattern();
  const Circuit prep = prep_circuit(cfg, pattern);
  const FloquetSpec dtc = cfg.floquet_spec();
  const auto model = cfg.noise_model();
  InterferometryOptions o;
  o.M = cfg.sampling.M;
  o.cycle_depolarizing = cfg.noise.cycle_depolarizing;
  o.n_traj = (model || o.cycle_depolarizing > 0.0) ? cfg.sampling.n_traj : 1;
  o.seed = cfg.seed;
  o.noise = model ? &*model : nullptr;
  const InterferometryTrace tr = cat_interferometry(prep, pattern, dtc, cfg.sampling.cycles, o);
  {
    auto f = out.open("interferometry.csv");
    write_csv(f, tr);
  }
  const double k0 = tr.fourier.front();
  std::vector<double> ratio;
  std::vector<double> te, le;
  for (std::size_t t = 0; t < tr.fourier.size(); ++t) {
    ratio.push_back(k0 > 0.0 ? tr.fourier[t] / k0 : 0.0);
    if (t % 2 == 0 && tr.fourier[t] > 0.0) {
      te.push_back(static_cast<double>(t));
      le.push_back(std::log(tr.fourier[t]));
    }
  }
  json summary = {{"n", cfg.n},
                  {"pattern", pattern.str()},
                  {"landscape", cfg.floquet.landscape},
                  {"cycles", cfg.sampling.cycles},
                  {"M", tr.M},
                  {"n_traj", tr.n_traj},
                  {"K_f_2N", tr.fourier},
                  {"ratio", ratio}};
  if (te.size() >= 2) summary["even_log_slope"] = fit_polynomial(te, le, 1).coef[1];
  spdlog::info("interferometry: K'_f(2N, 0)={:.6f} K'_f(2N, {})={:.6f}", k0, tr.fourier.size() - 1,
               tr.fourier.back());
  return summary;
}

json run_dtc_spectrum(const RunConfig& cfg, ArtifactWriter& out) {
  const FloquetSpec spec = cfg.floquet_spec();
  const SpinPattern target = cfg.spectral.target.empty() ? cfg.spin_pattern() : SpinPattern::from_string(cfg.spectral.target);
  const FloquetMatrix m = build_floquet_matrix(spec, cfg.spectral.allow_large ? kDenseHardCap : kDenseCap);
  const SpectrumReport r = diagonalize(m, cfg.spectral.with_ea);
  const std::size_t k = max_overlap_state(r, target);
  const ScarPair pair = find_scar_pair(r, target);
  const auto overlaps = pair_overlaps(r, target);
  spdlog::info("dtc-spectrum: N={} target IPR={:.7f} pair gap={:.9f}", cfg.n, r.ipr[k], pair.gap);

  auto f = out.open("spectrum.csv");
  f << "index,eigenphase,ipr," << (cfg.spectral.with_ea ? "ea," : "") << "pair_overlap\n" << std::setprecision(17);
  for (std::size_t i = 0; i < r.dim; ++i) {
    f << i << ',' << r.eigenphases[i] << ',' << r.ipr[i] << ',';
    if (cfg.spectral.with_ea) f << r.ea[i] << ',';
    f << overlaps[i] << '\n';
  }
  json summary = {{"n", cfg.n},
                  {"target", target.str()},
                  {"lambda1", spec.lambda1},
                  {"lambda2", spec.lambda2},
                  {"phi1", spec.phi1},
                  {"phi2", spec.phi2},
                  {"j_signs", spec.j_signs},
                  {"target_state", k},
                  {"target_ipr", r.ipr[k]},
                  {"target_eigenphase", r.eigenphases[k]},
                  {"pair", {{"eps_plus", pair.eps_plus}, {"eps_minus", pair.eps_minus}, {"gap", pair.gap},
                            {"ipr_plus", pair.ipr_plus}, {"ipr_minus", pair.ipr_minus}, {"weight", pair.weight}}},
                  {"unitarity_error", m.unitarity_error()},
                  {"max_residual", r.max_residual}};
  if (cfg.spectral.with_ea) summary["target_ea"] = r.ea[k];
  return summary;
}

json run_ea_scan(const RunConfig& cfg, ArtifactWriter& out) {
  EaScanConfig sc;
  sc.kind = cfg.spectral.ensemble == "mbl" ? EaKind::Mbl : EaKind::Scar;
  sc.lambdas = cfg.spectral.lambdas;
  sc.sizes = cfg.spectral.sizes;
  sc.n_samples = cfg.spectral.n_samples;
  sc.seed = cfg.seed;
  sc.phi1 = cfg.floquet.phi1;
  sc.phi2 = cfg.floquet.phi2;
  spdlog::info("ea-scan: {} ensemble, {} lambdas, {} sizes, {} samples", cfg.spectral.ensemble, sc.lambdas.size(),
               sc.sizes.size(), sc.n_samples);
  const EaScanResult r = ea_crossing_scan(sc);

  auto f = out.open("ea_scan.csv");
  f << "n,lambda,chi,chi_stderr\n" << std::setprecision(17);
  for (std::size_t s = 0; s < r.sizes.size(); ++s)
    for (std::size_t l = 0; l < r.lambdas.size(); ++l)
      f << r.sizes[s] << ',' << r.lambdas[l] << ',' << r.chi[s][l] << ',' << r.chi_stderr[s][l] << '\n';

  json crossings = json::array();
  for (const auto& c : r.pair_crossings) crossings.push_back(c ? json(*c) : json(nullptr));
  return {{"ensemble", cfg.spectral.ensemble},
          {"sizes", r.sizes},
          {"lambdas", r.lambdas},
          {"n_samples", sc.n_samples},
          {"chi", r.chi},
          {"chi_stderr", r.chi_stderr},
          {"pair_crossings", crossings},
          {"crossing", r.crossing ? json(*r.crossing) : json(nullptr)}};
}

json run_mbl_scan(const RunConfig& cfg, ArtifactWriter& out) {
  DisorderEnsemble ens;
  ens.J_mean = cfg.spectral.J_mean;
  ens.W = cfg.spectral.W;
  ens.n_samples = cfg.spectral.n_samples;
  ens.seed = cfg.seed;
  const SpinPattern target = cfg.spectral.target.empty() ? cfg.spin_pattern() : SpinPattern::from_string(cfg.spectral.target);
  const MblScanResult r = mbl_ensemble_scan(ens, target, cfg.spectral.lambdas, cfg.floquet_spec());
  {
    auto f = out.open("mbl_samples.csv");
    f << "lambda,sample,ipr_target,chi,gap\n" << std::setprecision(17);
    for (const auto& row : r.rows)
      f << row.lambda << ',' << row.sample << ',' << row.ipr_target << ',' << row.chi << ',' << row.gap << '\n';
  }
  json stats = json::array();
  {
    auto f = out.open("mbl_stats.csv");
    f << "lambda,mean,top10,bottom10\n" << std::setprecision(17);
    for (const auto& s : r.stats) {
      f << s.lambda << ',' << s.mean << ',' << s.top10 << ',' << s.bottom10 << '\n';
      stats.push_back({{"lambda", s.lambda}, {"mean", s.mean}, {"top10", s.top10}, {"bottom10", s.bottom10}});
    }
  }
  return {{"n", cfg.n}, {"target", target.str()}, {"J_mean", ens.J_mean}, {"W", ens.W},
          {"n_samples", ens.n_samples}, {"stats", stats}};
}

json run_rabi_decay(const RunConfig& cfg, ArtifactWriter& out) {
  const AnalyticsConfig& a = cfg.analytics;
  const SpinPattern pattern = cfg.spin_pattern();
  const RabiDetuning det = rabi_detuning(a.rabi_lambda1, a.rabi_phi1, a.rabi_phi2);
  const Circuit u1 = build_u1_circuit(FloquetSpec::uniform(cfg.n, a.rabi_lambda1, 0.0, a.rabi_phi1, a.rabi_phi2));

  StateVector s = init_fock(pattern);
  const auto si = pattern.index();
  const auto bi = pattern.complement().index();
  double max_err = 0.0;
  std::vector<double> ts, log_rabi, log_dtc;
  auto f = out.open("rabi.csv");
  f << "t,p_return,p_subspace,exact,approx,rabi_envelope,dtc_envelope\n" << std::setprecision(17);
  for (int t = 0; t <= cfg.sampling.cycles; ++t) {
    if (t > 0) execute(u1, s);
    const double pr = std::norm(s[si]);
    const double ps = pr + std::norm(s[bi]);
    const double re = rabi_envelope(det, a.e_p_rabi, cfg.n, t);
    const double de = dtc_envelope(0.5, a.e_p_dtc, cfg.n, t);
    f << t << ',' << pr << ',' << ps << ',';
    if (t % 2 == 0) {
      const RabiProbability p = rabi_subspace_probability(det, cfg.n, t);
      max_err = std::max(max_err, std::abs(pr - p.exact));
      f << p.exact << ',' << p.approx;
    } else {
      f << ',';
    }
    f << ',' << re << ',' << de << '\n';
    ts.push_back(t);
    log_rabi.push_back(std::log(re));
    log_dtc.push_back(std::log(de));
  }
  json summary = {{"n", cfg.n},
                  {"pattern", pattern.str()},
                  {"cycles", cfg.sampling.cycles},
                  {"alpha", det.alpha},
                  {"n_z", det.n_z},
                  {"lambda_eff", det.lambda_eff},
                  {"max_abs_error_vs_exact", max_err}};
  if (ts.size() >= 3) {
    summary["log_curvature_rabi"] = 2.0 * fit_polynomial(ts, log_rabi, 2).coef[2];
    summary["log_curvature_dtc"] = 2.0 * fit_polynomial(ts, log_dtc, 2).coef[2];
  }
  spdlog::info("rabi-decay: lambda_eff={:.6f} max error vs closed form {:.2e}", det.lambda_eff, max_err);
  return summary;
}

json run_lightcone(const RunConfig& cfg, ArtifactWriter& out) {
  const SpinPattern pattern = cfg.spin_pattern();
  const FloquetSpec dtc = cfg.floquet_spec();
  const auto model = cfg.noise_model();
  LightconeOptions o;
  o.threshold = cfg.obs.threshold;
  o.centers = cfg.obs.centers;
  o.noise = model ? &*model : nullptr;
  o.n_traj = cfg.sampling.n_traj;
  o.seed = cfg.seed;
  const LightconeReport r = lightcone_scan(pattern, dtc, cfg.sampling.cycles, o);
  {
    auto f = out.open("lightcone_sites.csv");
    write_site_csv(f, r);
  }
  if (cfg.obs.pair_csv) {
    auto f = out.open("lightcone_pairs.csv");
    write_pair_csv(f, r);
  }
  {
    auto f = out.open("radius.csv");
    f << "t,radius\n";
    for (std::size_t t = 0; t < r.radius.size(); ++t) f << t << ',' << r.radius[t] << '\n';
  }
  const ButterflyParams bf = butterfly_velocity(dtc.lambda1, dtc.lambda2, dtc.phi1, dtc.phi2, dtc.J);
  spdlog::info("lightcone: final radius {} fitted velocity {:.4f} analytic v_B {:.4f}", r.radius.back(), r.velocity,
               bf.vB);
  return {{"n", cfg.n},
          {"pattern", pattern.str()},
          {"landscape", cfg.floquet.landscape},
          {"centers", r.centers},
          {"radius", r.radius},
          {"fitted_velocity", r.velocity},
          {"analytic_vB", bf.vB}};
}

json run_analytics(const RunConfig& cfg, ArtifactWriter& out) {
  const AnalyticsConfig& a = cfg.analytics;
  json summary = json::object();
  std::optional<IprModel> model;
  if (a.ipr) {
    model = fit_vbar2(a.fit_lambda, a.fit_n, a.fit_ipr);
    json preds = json::array();
    for (const auto& p : a.predict) {
      const IprPrediction pr = analytic_ipr(*model, p.lambda, p.n);
      preds.push_back({{"lambda", p.lambda}, {"n", p.n}, {"ipr", pr.ipr}, {"error_bound", pr.error_bound}});
    }
    summary["ipr"] = {{"inputs", {{"fit_lambda", a.fit_lambda}, {"fit_n", a.fit_n}, {"fit_ipr", a.fit_ipr}}},
                      {"vbar2", model->vbar2},
                      {"predictions", preds}};
  }
  if (a.rabi) {
    const RabiDetuning det = rabi_detuning(a.rabi_lambda1, a.rabi_phi1, a.rabi_phi2);
    const double ipr = model ? analytic_ipr(*model, a.rabi_lambda1, a.envelope_n).ipr : 0.5;
    auto f = out.open("envelopes.csv");
    f << "t,dtc_envelope,rabi_envelope\n" << std::setprecision(17);
    for (int t = 0; t <= a.envelope_cycles; ++t)
      f << t << ',' << dtc_envelope(ipr, a.e_p_dtc, a.envelope_n, t) << ','
        << rabi_envelope(det, a.e_p_rabi, a.envelope_n, t) << '\n';
    summary["rabi"] = {
        {"inputs", {{"lambda1", a.rabi_lambda1}, {"phi1", a.rabi_phi1}, {"phi2", a.rabi_phi2},
                    {"e_p_dtc", a.e_p_dtc}, {"e_p_rabi", a.e_p_rabi}, {"n", a.envelope_n}}},
        {"alpha", det.alpha},
        {"n_z", det.n_z},
        {"lambda_eff", det.lambda_eff},
        {"dtc_plateau", std::sqrt(2.0 * ipr)}};
  }
  if (a.butterfly) {
    json rows = json::array();
    double sum = 0.0;
    auto f = out.open("butterfly.csv");
    f << "sample,phi1,alpha2,beta2,gamma2,alpha0,alpha1,beta1,gamma1,vB1,vB2,vB\n" << std::setprecision(17);
    for (std::size_t i = 0; i < a.bf_phi1.size(); ++i) {
      const ButterflyParams b = butterfly_velocity(a.bf_lambda1, a.bf_lambda2, a.bf_phi1[i], a.bf_phi2, a.bf_J);
      sum += b.vB;
      f << i + 1 << ',' << a.bf_phi1[i] << ',' << b.alpha2 << ',' << b.beta2 << ',' << b.gamma2 << ',' << b.alpha0
        << ',' << b.alpha1 << ',' << b.beta1 << ',' << b.gamma1 << ',' << b.vB1 << ',' << b.vB2 << ',' << b.vB << '\n';
      rows.push_back({{"sample", i + 1}, {"phi1", a.bf_phi1[i]}, {"vB1", b.vB1}, {"vB2", b.vB2}, {"vB", b.vB}});
    }
    summary["butterfly"] = {
        {"inputs", {{"lambda1", a.bf_lambda1}, {"lambda2", a.bf_lambda2}, {"phi2", a.bf_phi2}, {"J", a.bf_J}}},
        {"samples", rows},
        {"mean_vB", sum / static_cast<double>(a.bf_phi1.size())}};
  }
  return summary;
}

}  // namespace

json run_experiment(const RunConfig& cfg, ArtifactWriter& out) {
  switch (cfg.kind) {
    case Kind::GhzVerify: return run_ghz_verify(cfg, out);
    case Kind::Mqc: return run_mqc(cfg, out);
    case Kind::Parity: return run_parity(cfg, out);
    case Kind::Interferometry: return run_interferometry(cfg, out);
    case Kind::DtcSpectrum: return run_dtc_spectrum(cfg, out);
    case Kind::EaScan: return run_ea_scan(cfg, out);
    case Kind::MblScan: return run_mbl_scan(cfg, out);
    case Kind::RabiDecay: return run_rabi_decay(cfg, out);
    case Kind::Lightcone: return run_lightcone(cfg, out);
    case Kind::Analytics: return run_analytics(cfg, out);
  }
  throw std::logic_error("unhandled experiment kind");
}

json describe_plan(const RunConfig& cfg) {
  json plan = {{"experiment", kind_name(cfg.kind)}, {"seed", cfg.seed}, {"output_dir", cfg.output_dir.string()}};
  if (cfg.n > 0) {
    plan["n"] = cfg.n;
    plan["pattern"] = cfg.spin_pattern().str();
  }
  switch (cfg.kind) {
    case Kind::GhzVerify:
    case Kind::Mqc:
    case Kind::Parity:
      plan["layout"] = layout_label(cfg);
      plan["noise"] = cfg.noise.model;
      break;
    case Kind::Interferometry:
    case Kind::Lightcone:
    case Kind::DtcSpectrum:
    case Kind::MblScan: {
      const FloquetSpec s = cfg.floquet_spec();
      plan["floquet"] = {{"lambda1", s.lambda1}, {"lambda2", s.lambda2}, {"phi1", s.phi1},
                         {"phi2", s.phi2},       {"J", s.J},             {"j_signs", s.j_signs}};
      break;
    }
    case Kind::EaScan:
      plan["ensemble"] = cfg.spectral.ensemble;
      plan["grid_points"] = cfg.spectral.lambdas.size() * cfg.spectral.sizes.size();
      plan["diagonalizations"] =
          cfg.spectral.lambdas.size() * cfg.spectral.sizes.size() * static_cast<std::size_t>(cfg.spectral.n_samples);
      break;
    case Kind::RabiDecay:
    case Kind::Analytics:
      break;
  }
  return plan;
}

}  // namespace catdtc::cli
