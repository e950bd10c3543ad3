#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace catdtc;

namespace {

oracle::Mat circuit_unitary(const Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.n_qubits;
  oracle::Mat u(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    StateVector s(c.n_qubits);
    s[0] = 0.0;
    s[b] = 1.0;
    execute(c, s);
    for (std::size_t r = 0; r < dim; ++r) u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b)) = s[r];
  }
  return u;
}

// prod_q Z((-1)^{s_q} phi) as a dense matrix.
oracle::Mat z_phases(const SpinPattern& p, double phi) {
  const int n = p.size();
  oracle::Mat m = oracle::Mat::Identity(std::size_t{1} << n, std::size_t{1} << n);
  for (int q = 0; q < n; ++q) m = oracle::embed1(oracle::rot('z', p[q] ? -phi : phi), q, n) * m;
  return m;
}

oracle::Mat x_all(int n) {
  oracle::Mat m = oracle::Mat::Identity(std::size_t{1} << n, std::size_t{1} << n);
  for (int q = 0; q < n; ++q) m = oracle::embed1(oracle::rot('x', kPi), q, n) * m;
  return m;
}

}  // namespace

TEST(Mqc, ExactCatSpectrum) {
  const SpinPattern p = SpinPattern::from_string("011010");
  const Circuit prep = ghz_line_prep(p);
  const MqcTrace tr = mqc_run(prep, p, GridKind::Sparse);
  EXPECT_EQ(tr.n_samples(), 14u);
  const MqcSpectrum sp = mqc_fourier(tr);
  EXPECT_NEAR(sp.at(6), 0.25, 1e-12);
  EXPECT_NEAR(sp.at(-6), 0.25, 1e-12);
  EXPECT_NEAR(sp.at(0), 0.5, 1e-12);
  for (int q = 1; q < 6; ++q) EXPECT_NEAR(sp.at(q), 0.0, 1e-12) << q;
  EXPECT_THROW(sp.at(7), std::out_of_range);

  const GhzFidelityReport f = ghz_fidelity(0.5, 0.5, sp);
  EXPECT_NEAR(f.F, 1.0, 1e-12);
}

TEST(Mqc, ShortcutMatchesDenseCircuit) {
  const SpinPattern p = SpinPattern::from_string("0110");
  const Circuit prep = ghz_line_prep(p);
  const oracle::Mat up = circuit_unitary(prep);
  const std::vector<double> phis = mqc_dense_grid(4);
  const MqcTrace tr = mqc_run(prep, p, phis);
  for (std::size_t k = 0; k < phis.size(); ++k) {
    const oracle::Mat u = up.adjoint() * z_phases(p, phis[k]) * x_all(4) * up;
    EXPECT_NEAR(tr.values[k], std::norm(u(0, 0)), 1e-12) << k;
  }
}

TEST(Mqc, NoiselessTrajectoriesAgreeWithExact) {
  const SpinPattern p = SpinPattern::neel(4);
  const Circuit prep = ghz_line_prep(p);
  const NoiseModel quiet = NoiseModel::noiseless();
  MqcOptions o;
  o.noise = &quiet;
  o.n_traj = 2;
  const MqcTrace a = mqc_run(prep, p, GridKind::Dense, o);
  const MqcTrace b = mqc_run(prep, p, GridKind::Dense);
  for (std::size_t k = 0; k < a.values.size(); ++k) EXPECT_NEAR(a.values[k], b.values[k], 1e-12);
}

TEST(Mqc, NoiseReducesCoherence) {
  const SpinPattern p = SpinPattern::neel(4);
  const Circuit prep = compile(generate_ghz_circuit(Layout2D::full(2, 2), p).circuit);
  const NoiseModel m = NoiseModel::depolarizing(0.01, 0.05);
  MqcOptions o;
  o.noise = &m;
  o.n_traj = 300;
  const MqcSpectrum sp = mqc_fourier(mqc_run(prep, p, GridKind::Sparse, o));
  EXPECT_LT(sp.at(4), 0.24);
  EXPECT_GT(sp.at(4), 0.1);
}

TEST(Grids, SizesAndSpacing) {
  const auto s = mqc_sparse_grid(5);
  ASSERT_EQ(s.size(), 12u);
  EXPECT_NEAR(s[1] - s[0], kPi / 6, 1e-15);
  const auto d = mqc_dense_grid(5);
  ASSERT_EQ(d.size(), 42u);
  EXPECT_LT(d.back(), 2 * kPi);
  const auto g = interferometry_grid(4, 10);
  EXPECT_NEAR(g[0], -kPi / 4, 1e-15);
  EXPECT_NEAR(g[1] - g[0], 2 * kPi / 40, 1e-15);
}

TEST(Parity, CatOscillatesWithUnitAmplitude) {
  for (const char* bits : {"0101", "011010", "00000000"}) {
    const SpinPattern p = SpinPattern::from_string(bits);
    const int n = p.size();
    const StateVector cat = ghz_state(p, 0.4);
    std::vector<double> gammas;
    for (int k = 0; k < 40; ++k) gammas.push_back(4 * kPi * k / (n * 40.0));
    const auto v = parity_scan(cat, p, gammas);
    const ParityFit f = fit_parity(gammas, v, n);
    EXPECT_NEAR(f.amplitude, 1.0, 1e-12) << bits;
    for (std::size_t k = 0; k < v.size(); ++k)
      EXPECT_NEAR(v[k], f.amplitude * std::cos(n * gammas[k] + f.phase), 1e-12);
  }
}

TEST(Parity, MixtureHasNoOscillation) {
  // Populations only: the cross term vanishes.
  const SpinPattern p = SpinPattern::neel(4);
  StateVector s = init_fock(p);
  const auto v = parity_scan(s, p, {0.0, 0.3, 0.9});
  for (double x : v) EXPECT_NEAR(x, 0.0, 1e-15);
  EXPECT_THROW(parity_scan(ghz_state(SpinPattern::neel(5)), SpinPattern::neel(5), {0.0}), std::invalid_argument);
}

TEST(ParityFit, RecoversKnownPhase) {
  std::vector<double> g, y;
  for (int k = 0; k < 30; ++k) {
    g.push_back(0.07 * k);
    y.push_back(0.6 * std::cos(8 * g.back() - 0.9));
  }
  const ParityFit f = fit_parity(g, y, 8);
  EXPECT_NEAR(f.amplitude, 0.6, 1e-12);
  EXPECT_NEAR(f.phase, -0.9, 1e-12);
}

TEST(Interferometry, InitialFourierWeight) {
  const SpinPattern p = SpinPattern::neel(6);
  const FloquetSpec dtc = FloquetSpec::uniform(6, 0.05, -0.05, -kPi / 2, kPi / 2 - 0.6);
  const InterferometryTrace tr = cat_interferometry(ghz_line_prep(p), p, dtc, 4);
  ASSERT_EQ(tr.fourier.size(), 5u);
  EXPECT_NEAR(tr.fourier[0], 0.25, 1e-12);
  // Odd periods swap s and s_bar, which cancels the 2N component.
  EXPECT_LT(tr.fourier[1], 0.02);
  EXPECT_GT(tr.fourier[2], 0.2);
}

TEST(Interferometry, LinearShortcutMatchesDirect) {
  const SpinPattern p = SpinPattern::from_string("011010");
  const FloquetSpec dtc = edit_pattern(FloquetSpec::experiment(6, 0.2), p);
  InterferometryOptions o;
  o.M = 9;
  const InterferometryTrace a = cat_interferometry(ghz_line_prep(p), p, dtc, 5, o);
  o.force_direct = true;
  const InterferometryTrace b = cat_interferometry(ghz_line_prep(p), p, dtc, 5, o);
  for (std::size_t t = 0; t < a.values.size(); ++t)
    for (std::size_t k = 0; k < a.values[t].size(); ++k) EXPECT_NEAR(a.values[t][k], b.values[t][k], 1e-12);
}

TEST(Interferometry, MatchesDenseOracle) {
  const SpinPattern p = SpinPattern::from_string("0110");
  const FloquetSpec dtc = FloquetSpec::uniform(4, 0.3, 0.2, 0.1, -0.7);
  const Circuit prep = ghz_line_prep(p);
  InterferometryOptions o;
  o.M = 6;
  const InterferometryTrace tr = cat_interferometry(prep, p, dtc, 3, o);
  const oracle::Mat up = circuit_unitary(prep);
  const oracle::Mat uf = oracle::floquet(dtc);
  oracle::Mat ut = oracle::Mat::Identity(16, 16);
  for (int t = 0; t <= 3; ++t) {
    if (t > 0) ut = uf * ut;
    for (int k = 0; k < o.M; ++k) {
      const double phi = tr.phis[static_cast<std::size_t>(k)];
      const oracle::Mat u = up.adjoint() * z_phases(p, -phi) * x_all(4) * ut * z_phases(p, phi) * up;
      EXPECT_NEAR(tr.values[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)], std::norm(u(0, 0)), 1e-12);
    }
  }
}

TEST(Interferometry, CycleDepolarizingDecay) {
  const SpinPattern p = SpinPattern::neel(4);
  const FloquetSpec dtc = FloquetSpec::uniform(4, 0.0, 0.0, -kPi / 2, kPi / 2 - 0.6);
  InterferometryOptions o;
  o.cycle_depolarizing = 0.05;
  o.n_traj = 2000;
  o.seed = 3;
  const InterferometryTrace tr = cat_interferometry(ghz_line_prep(p), p, dtc, 4, o);
  // At lambda = 0 only errors reduce the signal: each qubit and cycle keeps
  // the cat coherent with probability 1 - p (X, Y, Z each p/4 flip its sign
  // or move it out of the cat subspace).
  const double expect = 0.25 * std::pow(1.0 - 0.05, 4 * 4);
  EXPECT_NEAR(tr.fourier[4], expect, 0.02);
  EXPECT_LT(tr.fourier[4], tr.fourier[2]);
}
