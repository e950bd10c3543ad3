#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace catdtc;

TEST(IprModel, FitReproducesItsInputAndScales) {
  const IprModel m = fit_vbar2(0.01, 8, 0.498820);
  EXPECT_NEAR(m.vbar2, 1.4776, 1e-3);
  EXPECT_NEAR(analytic_ipr(m, 0.01, 8).ipr, 0.498820, 1e-12);
  // Depends on lambda and N only through lambda^2 N.
  EXPECT_NEAR(analytic_ipr(m, 0.02, 8).ipr, analytic_ipr(m, 0.04, 2).ipr, 1e-15);
  EXPECT_NEAR(analytic_ipr(m, 0.1, 10).error_bound, 0.01, 1e-15);
  EXPECT_DOUBLE_EQ(analytic_ipr(m, 0.0, 8).ipr, 0.5);
  EXPECT_THROW(fit_vbar2(0.01, 8, 0.6), std::invalid_argument);
  EXPECT_THROW(fit_vbar2(0.0, 8, 0.4), std::invalid_argument);
}

TEST(Angles, ReduceIntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(reduce_angle(kPi), kPi);
  EXPECT_NEAR(reduce_angle(-kPi), kPi, 1e-15);
  EXPECT_NEAR(reduce_angle(3 * kPi / 2), -kPi / 2, 1e-15);
  EXPECT_NEAR(reduce_angle(0.3 + 8 * kPi), 0.3, 1e-13);
}

TEST(Rabi, ExactProbabilityMatchesSingleSitePower) {
  // Each site evolves independently under the drive; the Fock return
  // probability factorizes into single-site return probabilities.
  for (auto [l1, p1, p2] : std::vector<std::tuple<double, double, double>>{
           {0.05, -1.57008, 0.97}, {0.05, 1.04943, 0.97}, {0.2, 0.3, -0.4}, {0.1, 0.5, 0.5}}) {
    const Eigen::Matrix2cd site =
        oracle::rot('z', p1) * oracle::rot('y', -l1) * oracle::rot('z', p2) * oracle::rot('x', kPi);
    const RabiDetuning d = rabi_detuning(l1, p1, p2);
    for (int t : {2, 10, 40}) {
      Eigen::Matrix2cd ut = Eigen::Matrix2cd::Identity();
      for (int k = 0; k < t; ++k) ut = site * ut;
      const int n = 6;
      const double ref = std::pow(std::norm(ut(0, 0)), n);
      EXPECT_NEAR(rabi_subspace_probability(d, n, t).exact, ref, 1e-12) << l1 << " " << p1 << " t=" << t;
    }
  }
}

TEST(Rabi, ResonantDriveHasNoDetuning) {
  const RabiDetuning d = rabi_detuning(0.05, 0.4, 0.4);
  EXPECT_NEAR(d.alpha, 0.0, 1e-12);
  EXPECT_NEAR(d.lambda_eff, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(rabi_subspace_probability(d, 10, 20).exact, 1.0);
  EXPECT_THROW(rabi_subspace_probability(d, 10, 3), std::invalid_argument);
}

TEST(Rabi, GaussianApproximationAtShortTimes) {
  const RabiDetuning d = rabi_detuning(0.05, -1.57008, 0.97);
  const RabiProbability p = rabi_subspace_probability(d, 12, 4);
  EXPECT_NEAR(p.exact, p.approx, 5e-4);
}

TEST(Envelopes, ClosedForms) {
  EXPECT_NEAR(dtc_envelope(0.5, 0.0, 10, 7), 1.0, 1e-15);
  EXPECT_NEAR(dtc_envelope(0.5, 0.01, 2, 3), std::pow(0.99, 6), 1e-15);
  EXPECT_NEAR(dtc_envelope(0.125, 0.0, 4, 1), 0.5, 1e-15);
  const RabiDetuning d{0.1, 0.0, 0.05};
  EXPECT_NEAR(rabi_envelope(d, 0.0, 4, 10), std::exp(-4 * 0.0025 * 100), 1e-15);
  EXPECT_THROW(dtc_envelope(0.5, 1.0, 2, 1), std::invalid_argument);
}

TEST(Butterfly, VanishesWithoutPerturbation) {
  const ButterflyParams b = butterfly_velocity(0.0, 0.0, 0.4, -1.1);
  EXPECT_NEAR(b.vB, 0.0, 1e-15);
  EXPECT_NEAR(b.alpha0, 1.0, 1e-15);
}

TEST(Butterfly, SingleSpinPartIsAUnitQuaternion) {
  for (double p1 : {1.04943, -0.64870, 0.32882}) {
    const ButterflyParams b = butterfly_velocity(0.05, 0.05, p1, 0.97);
    const double norm = b.alpha0 * b.alpha0 + b.alpha1 * b.alpha1 + b.beta1 * b.beta1 + b.gamma1 * b.gamma1;
    EXPECT_NEAR(norm, 1.0, 1e-12);
    EXPECT_GT(b.vB, 0.0);
    EXPECT_NEAR(b.vB, b.vB1 + b.vB2, 1e-15);
  }
}

TEST(Butterfly, SingleSpinPartReducesWhenLambda2Vanishes) {
  // With lambda2 = 0 only the bare drive mismatch phi2 - phi1 contributes.
  const double l1 = 0.07, p1 = 0.2, p2 = 0.9;
  const ButterflyParams b = butterfly_velocity(l1, 0.0, p1, p2);
  const double sh = std::sin(l1 / 2), ch = std::cos(l1 / 2);
  EXPECT_NEAR(b.alpha1, sh * sh * std::sin(p2 - p1), 1e-15);
  EXPECT_NEAR(b.beta1, sh * ch * (std::sin(p2) - std::sin(p1)), 1e-15);
  EXPECT_NEAR(b.gamma2, -std::sin(l1) * std::sin(p1), 1e-15);
}

TEST(PolyFit, RecoversExactPolynomial) {
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    const double v = 0.1 * i;
    x.push_back(v);
    y.push_back(1.0 - 2.0 * v + 0.5 * v * v);
  }
  const PolyFit f = fit_polynomial(x, y, 2);
  ASSERT_EQ(f.coef.size(), 3u);
  EXPECT_NEAR(f.coef[0], 1.0, 1e-12);
  EXPECT_NEAR(f.coef[1], -2.0, 1e-12);
  EXPECT_NEAR(f.coef[2], 0.5, 1e-12);
  EXPECT_LT(f.rms, 1e-13);
  EXPECT_THROW(fit_polynomial({1.0}, {1.0}, 1), std::invalid_argument);
}
