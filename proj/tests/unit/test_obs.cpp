#include <gtest/gtest.h>

#include <sstream>

#include "oracle.hpp"

using namespace catdtc;

TEST(Correlations, CatIsFullyConnected) {
  const CorrelationMap g = connected_correlations(ghz_state(SpinPattern::from_string("011010")));
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) EXPECT_NEAR(g(j, k), j == k ? 0.0 : 1.0, 1e-14);
  for (double v : site_averaged(g)) EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(Correlations, ProductStatesAreUncorrelated) {
  const CorrelationMap f = connected_correlations(init_fock(SpinPattern::from_string("0110")));
  for (double v : f.g) EXPECT_NEAR(v, 0.0, 1e-15);
  StateVector s(3);
  for (int q = 0; q < 3; ++q) apply_1q(s, q, gates::y_rotation(0.3 + q));
  for (double v : connected_correlations(s).g) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(ZMoments, MatchDenseExpectationValues) {
  const int n = 5;
  const StateVector s = oracle::random_state(n, 41);
  const oracle::Vec v = oracle::to_eigen(s.amps());
  const ZMoments m = ZMoments::of(s);
  auto ev = [&](const oracle::Mat& op) { return (v.adjoint() * op * v)(0).real(); };
  for (int j = 0; j < n; ++j) {
    const oracle::Mat zj = oracle::embed1(oracle::pauli('z'), j, n);
    EXPECT_NEAR(m.z[static_cast<std::size_t>(j)], ev(zj), 1e-13);
    for (int k = 0; k < n; ++k) {
      const oracle::Mat zk = oracle::embed1(oracle::pauli('z'), k, n);
      EXPECT_NEAR(m.zz[static_cast<std::size_t>(j * n + k)], ev(zj * zk), 1e-13);
    }
  }
  const CorrelationMap g = m.correlations();
  EXPECT_NEAR(g(1, 3), std::abs(m.zz[1 * n + 3] - m.z[1] * m.z[3]), 1e-15);
}

TEST(ZMoments, AccumulateIsWeightedMean) {
  const ZMoments a = ZMoments::of(init_fock(SpinPattern::from_string("00")));
  const ZMoments b = ZMoments::of(init_fock(SpinPattern::from_string("11")));
  ZMoments acc;
  acc.accumulate(a, 0.5);
  acc.accumulate(b, 0.5);
  // Equal mixture of |00> and |11>: classical correlation 1.
  const CorrelationMap g = acc.correlations();
  EXPECT_NEAR(g(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(acc.z[0], 0.0, 1e-15);
}

TEST(Patterns, DomainWallsAndFlippableSites) {
  const SpinPattern p = SpinPattern::from_string("010101110101");
  EXPECT_EQ(domain_walls(p), 10);
  EXPECT_EQ(domain_walls(SpinPattern::from_string("0011"), false), 1);
  EXPECT_EQ(domain_walls(SpinPattern::from_string("0011"), true), 2);

  const std::vector<int> uniform(12, 1);
  EXPECT_EQ(flippable_sites(p, uniform), (std::vector<int>{5, 7}));
  // Signs compatible with the pattern leave no zero-cost flips.
  const FloquetSpec edited = edit_pattern(FloquetSpec::experiment(12, 0.05), p);
  EXPECT_TRUE(flippable_sites(p, edited.j_signs).empty());
  EXPECT_THROW(flippable_sites(p, {1, 1}), std::invalid_argument);
}

TEST(Lightcone, FrozenWithoutPerturbation) {
  const SpinPattern p = SpinPattern::from_string("01011010");
  const FloquetSpec s = FloquetSpec::uniform(8, 0.0, 0.0, -kPi / 2, kPi / 2 - 0.6);
  const LightconeReport r = lightcone_scan(p, s, 6);
  ASSERT_EQ(r.radius.size(), 7u);
  for (int rad : r.radius) EXPECT_EQ(rad, -1);
  for (const auto& row : r.g_site)
    for (double v : row) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Lightcone, DefaultCentersAndCsv) {
  const SpinPattern p = SpinPattern::from_string("01011101");
  const FloquetSpec s = FloquetSpec::uniform(8, 0.2, 0.2, -kPi / 2, kPi / 2 - 0.6);
  const LightconeReport r = lightcone_scan(p, s, 3);
  EXPECT_EQ(r.centers, flippable_sites(p, s.j_signs));
  std::ostringstream site, pair;
  write_site_csv(site, r);
  write_pair_csv(pair, r);
  EXPECT_NE(site.str().find('\n'), std::string::npos);
  EXPECT_GT(pair.str().size(), site.str().size());

  LightconeOptions o;
  o.centers = {9};
  EXPECT_THROW(lightcone_scan(p, s, 1, o), std::out_of_range);
}

TEST(Lightcone, NoiselessTrajectoriesMatchExact) {
  const SpinPattern p = SpinPattern::from_string("010110");
  const FloquetSpec s = FloquetSpec::uniform(6, 0.3, 0.1, -kPi / 2, kPi / 2 - 0.6);
  const NoiseModel quiet = NoiseModel::noiseless();
  LightconeOptions o;
  o.noise = &quiet;
  o.n_traj = 3;
  const LightconeReport a = lightcone_scan(p, s, 4, o);
  const LightconeReport b = lightcone_scan(p, s, 4);
  for (std::size_t t = 0; t < a.g_site.size(); ++t)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_NEAR(a.g_site[t][j], b.g_site[t][j], 1e-12);
}
