#include <gtest/gtest.h>

#include <numeric>

#include "oracle.hpp"

using namespace catdtc;

namespace {

Observable z_of(int q) {
  return [q](const StateVector& s) { return expect_z(s, q); };
}

// Tolerance of five standard errors for a +-1 valued observable.
double tol5(double mean, int n) { return 5.0 * std::sqrt((1.0 - mean * mean) / n); }

}  // namespace

TEST(Noise, SingleQubitPauliChannelRate) {
  Circuit c(1);
  c.add_layer({Gate::z(0, 0.0)});
  const double ep = 0.3;
  const int n = 20000;
  const McEstimate e = mc_expectation(c, NoiseModel::depolarizing(ep, 0.0), z_of(0), n, 4);
  // X and Y flip Z, each with probability ep/3.
  const double expect = 1.0 - 4.0 * ep / 3.0;
  EXPECT_NEAR(e.mean, expect, tol5(expect, n));
}

TEST(Noise, TwoQubitPauliChannelRate) {
  Circuit c(2);
  c.add_layer({Gate::cz(0, 1)});
  const double ep = 0.3;
  const int n = 20000;
  const McEstimate e = mc_expectation(c, NoiseModel::depolarizing(0.0, ep), z_of(0), n, 5);
  // 8 of the 15 non-identity two-qubit Paulis act as X or Y on qubit 0.
  const double expect = 1.0 - 2.0 * ep * 8.0 / 15.0;
  EXPECT_NEAR(e.mean, expect, tol5(expect, n));
}

TEST(Noise, AmplitudeDampingPopulation) {
  Circuit c(1);
  c.add_layer({Gate::x(0, kPi)});
  NoiseModel m = NoiseModel::noiseless();
  m.relaxation = true;
  m.t1 = 100.0;
  m.t2se = 150.0;
  const int n = 20000;
  const McEstimate e = mc_expectation(c, m, z_of(0), n, 8);
  // <Z> = 1 - 2 P(1) with P(1) = exp(-dur / t1).
  const double expect = 1.0 - 2.0 * std::exp(-m.dur_1q / m.t1);
  EXPECT_NEAR(e.mean, expect, tol5(expect, n));
}

TEST(Noise, EstimatesAreReproducibleAndGrouped) {
  const Circuit c = compile(generate_ghz_circuit(Layout2D::full(2, 2), SpinPattern::neel(4)).circuit);
  const NoiseModel m = NoiseModel::for_ghz(4);
  const McEstimate a = mc_expectation(c, m, z_of(1), 203, 11, 5);
  const McEstimate b = mc_expectation(c, m, z_of(1), 203, 11, 5);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.group_means, b.group_means);
  EXPECT_EQ(a.group_seeds.size(), 5u);
  const McEstimate other = mc_expectation(c, m, z_of(1), 203, 12, 5);
  EXPECT_NE(a.group_seeds, other.group_seeds);
  EXPECT_THROW(mc_expectation(c, m, z_of(1), 0, 1), std::invalid_argument);
}

TEST(Noise, ModelTableAndValidation) {
  EXPECT_EQ(ghz_gate_error_table().size(), 5u);
  const NoiseModel m = NoiseModel::for_ghz(8);
  EXPECT_DOUBLE_EQ(m.ep_1q, 0.00045);
  EXPECT_DOUBLE_EQ(m.ep_2q, 0.00199);
  EXPECT_TRUE(m.relaxation);
  EXPECT_THROW(NoiseModel::for_ghz(6), std::invalid_argument);
  EXPECT_TRUE(NoiseModel::noiseless().trivial());
  NoiseModel bad = m;
  bad.t2se = 3.0 * bad.t1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Readout, FullTensorInversionIsExact) {
  const ReadoutModel m{{0.97, 0.99, 0.95}, {0.92, 0.9, 0.94}};
  std::vector<double> truth(8);
  std::iota(truth.begin(), truth.end(), 1.0);
  const double s = std::accumulate(truth.begin(), truth.end(), 0.0);
  for (auto& v : truth) v /= s;

  // Forward map built explicitly as the Kronecker product of confusions.
  std::vector<double> measured(8, 0.0);
  for (std::size_t t = 0; t < 8; ++t)
    for (std::size_t r = 0; r < 8; ++r) {
      double p = 1.0;
      for (int q = 0; q < 3; ++q) {
        const auto c = m.confusion(q);
        p *= c[2 * ((t >> q) & 1) + ((r >> q) & 1)];
      }
      measured[r] += p * truth[t];
    }
  const auto back = correct_full_tensor(measured, m);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(back[i], truth[i], 1e-14);
  EXPECT_THROW(correct_full_tensor(std::vector<double>(4, 0.25), m), std::invalid_argument);
}

TEST(Readout, SampledCorrectionRecoversCat) {
  const int n = 4;
  std::vector<double> probs(16, 0.0);
  probs[0b0101] = probs[0b1010] = 0.5;
  const ReadoutModel m = ReadoutModel::uniform(n, 0.98, 0.95);
  Rng rng(3);
  const auto counts = apply_readout_noise(probs, m, rng, 200000);
  EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}), 200000u);
  EXPECT_LT(counts[0b0101] + counts[0b1010], 180000u);

  const auto full = correct_full_tensor(
      [&] {
        std::vector<double> f(16);
        for (std::size_t i = 0; i < 16; ++i) f[i] = static_cast<double>(counts[i]) / 200000.0;
        return f;
      }(),
      m);
  EXPECT_NEAR(full[0b0101] + full[0b1010], 1.0, 0.01);

  const ReadoutCorrection tr = correct_truncated(counts, m, 16);
  const auto dense = tr.dense(n);
  EXPECT_NEAR(dense[0b0101] + dense[0b1010], 1.0, 0.01);
  EXPECT_GT(tr.rcond, 0.0);
  EXPECT_NEAR(std::accumulate(tr.probabilities.begin(), tr.probabilities.end(), 0.0), 1.0, 1e-12);
}

TEST(Readout, RejectsBadFidelities) {
  EXPECT_THROW(ReadoutModel::uniform(2, 0.0, 0.9), std::invalid_argument);
  EXPECT_THROW(ReadoutModel::uniform(2, 0.9, 1.2), std::invalid_argument);
  const ReadoutModel half = ReadoutModel::uniform(1, 0.5, 0.5);
  EXPECT_THROW(correct_full_tensor(std::vector<double>{0.5, 0.5}, half), std::runtime_error);
}
