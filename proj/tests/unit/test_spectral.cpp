#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>

#include "oracle.hpp"

using namespace catdtc;

TEST(FloquetMatrix, MatchesDenseOracle) {
  FloquetSpec s = FloquetSpec::uniform(6, 0.21, 0.11, -0.3, 0.8);
  s = edit_pattern(s, SpinPattern::from_string("011010"));
  const FloquetMatrix m = build_floquet_matrix(s);
  EXPECT_LT(m.unitarity_error(), 1e-13);
  EXPECT_LT(oracle::distance_up_to_phase(oracle::to_eigen(m), oracle::floquet(s)), 1e-12);
}

TEST(FloquetMatrix, ApplyMatchesColumns) {
  const FloquetMatrix m = build_floquet_matrix(FloquetSpec::experiment(4, 0.1));
  const std::vector<cplx> v(m.dim, cplx(0.25, 0.0));
  const auto w = m.apply(v);
  const oracle::Vec ref = oracle::to_eigen(m) * oracle::to_eigen(std::span<const cplx>(v));
  for (std::size_t i = 0; i < m.dim; ++i) EXPECT_LT(std::abs(w[i] - ref(static_cast<Eigen::Index>(i))), 1e-14);
}

TEST(FloquetMatrix, SizeCap) {
  EXPECT_THROW(build_floquet_matrix(FloquetSpec::experiment(14, 0.05)), std::length_error);
  EXPECT_THROW(build_floquet_matrix(FloquetSpec::experiment(16, 0.05), kDenseHardCap), std::length_error);
}

TEST(Diagonalize, EigenphasesMatchGeneralEigensolver) {
  const FloquetSpec s = FloquetSpec::uniform(6, 0.3, -0.2, 0.5, 1.2);
  const FloquetMatrix m = build_floquet_matrix(s);
  const SpectrumReport r = diagonalize(m);
  EXPECT_LT(r.max_residual, 1e-10);

  Eigen::ComplexEigenSolver<oracle::Mat> es(oracle::to_eigen(m));
  std::vector<double> ref;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ref.push_back(std::arg(es.eigenvalues()(i)));
  std::sort(ref.begin(), ref.end());
  ASSERT_EQ(ref.size(), r.eigenphases.size());
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(r.eigenphases[i], ref[i], 1e-10);
  EXPECT_TRUE(std::is_sorted(r.eigenphases.begin(), r.eigenphases.end()));

  // Eigenvectors are orthonormal and satisfy U v = e^{i eps} v.
  const oracle::Mat u = oracle::to_eigen(m);
  for (std::size_t k = 0; k < r.dim; k += 7) {
    const oracle::Vec v = oracle::to_eigen(r.vector(k));
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    EXPECT_LT((u * v - std::polar(1.0, r.eigenphases[k]) * v).norm(), 1e-10);
  }
}

TEST(Diagonalize, LargeDegenerateSpectrum) {
  // lambda = 0 makes U_F a permutation times phases with large degenerate
  // blocks, a hard case for divide-and-conquer solvers.
  const FloquetMatrix m = build_floquet_matrix(FloquetSpec::uniform(10, 0.0, 0.0, -kPi / 2, kPi / 2 - 0.6));
  const Eigensystem e = diagonalize_unitary(m.data, m.dim);
  EXPECT_LT(e.max_residual, 1e-10);
  EXPECT_LT(e.max_orthogonality_error, 1e-10);
}

TEST(Ipr, BasisAndUniformStates) {
  const std::size_t dim = 64;
  std::vector<cplx> v(dim, 0.0);
  v[5] = 1.0;
  EXPECT_DOUBLE_EQ(ipr(v), 1.0);
  std::fill(v.begin(), v.end(), cplx(1.0 / 8.0, 0.0));
  EXPECT_NEAR(ipr(v), 1.0 / 64.0, 1e-15);
  std::fill(v.begin(), v.end(), 0.0);
  v[3] = v[60] = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(ipr(v), 0.5, 1e-15);
}

TEST(EdwardsAnderson, CatProductAndBruteForce) {
  const SpinPattern p = SpinPattern::from_string("011010");
  const StateVector cat = ghz_state(p);
  EXPECT_NEAR(edwards_anderson(cat.amps(), 6), 6.0, 1e-12);

  // Product of |+> states has no Z correlations.
  std::vector<cplx> plus(64, cplx(0.125, 0.0));
  EXPECT_NEAR(edwards_anderson(plus, 6), 0.0, 1e-14);

  // Random state against sum over pairs of <Z_j Z_k>^2 built from the oracle.
  const StateVector r = oracle::random_state(5, 77);
  const oracle::Vec v = oracle::to_eigen(r.amps());
  double chi = 0.0;
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k) {
      if (j == k) continue;
      const oracle::Mat zz = oracle::embed1(oracle::pauli('z'), j, 5) * oracle::embed1(oracle::pauli('z'), k, 5);
      const double e = (v.adjoint() * zz * v)(0).real();
      chi += e * e;
    }
  EXPECT_NEAR(edwards_anderson(r.amps(), 5), chi / 4.0, 1e-12);
}

TEST(ScarPair, UnperturbedGapIsPi) {
  for (const char* bits : {"00000000", "01010101", "10011010", "00110011"}) {
    const SpinPattern t = SpinPattern::from_string(bits);
    const FloquetSpec s = edit_pattern(FloquetSpec::uniform(8, 0.0, 0.0, -kPi / 2, kPi / 2 - 0.6), t);
    const SpectrumReport r = diagonalize(build_floquet_matrix(s));
    const ScarPair p = find_scar_pair(r, t);
    EXPECT_NEAR(p.gap, kPi, 1e-9) << bits;
    EXPECT_NEAR(p.weight, 2.0, 1e-9) << bits;
  }
}

TEST(ScarPair, CatEigenstatesAtSmallLambda) {
  const SpinPattern t = SpinPattern::from_string("10011010");
  const FloquetSpec s = edit_pattern(FloquetSpec::uniform(8, 0.01, 0.01, -kPi / 2, kPi / 2 - 0.6), t);
  const SpectrumReport r = diagonalize(build_floquet_matrix(s), true);
  const std::size_t m = max_overlap_state(r, t);
  EXPECT_GT(pair_overlaps(r, t)[m], 0.99);
  EXPECT_NEAR(r.ipr[m], 0.4988, 1e-3);
  EXPECT_GT(r.ea[m], 7.9);
}

TEST(ScarPatterns, SolveBondSignsAndRejectFrustration) {
  const std::vector<int> signs{1, -1, -1, 1, 1, 1};
  const ScarPatterns p = scar_patterns(signs);
  for (const SpinPattern& s : {p.a[0], p.a[1]}) {
    for (int j = 0; j < 6; ++j)
      EXPECT_EQ((2 * s[j] - 1) * (2 * s[(j + 1) % 6] - 1), signs[static_cast<std::size_t>(j)]);
  }
  EXPECT_EQ(p.a[1], p.a[0].complement());
  EXPECT_EQ(p.b[0], p.a[0].staggered());
  EXPECT_THROW(scar_patterns({1, 1, 1, -1}), std::invalid_argument);
  EXPECT_THROW(scar_patterns({1, 1, 1}), std::invalid_argument);
}

TEST(ScarIpr, UniformChainReferenceValue) {
  // Neel cat on a uniform chain with opposite-sign perturbations.
  const FloquetSpec s = FloquetSpec::uniform(8, 0.05, -0.05, -kPi / 2, kPi / 2 - 0.6);
  const SpectrumReport r = diagonalize(build_floquet_matrix(s));
  const std::size_t m = max_overlap_state(r, SpinPattern::neel(8));
  EXPECT_NEAR(r.ipr[m], 0.4817247, 5e-6);
}

TEST(CurveCrossing, LinearInterpolation) {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  EXPECT_NEAR(*curve_crossing(x, {1.0, 2.0, 3.0, 4.0}, {2.0, 2.5, 2.0, 1.0}), 4.0 / 3.0, 1e-15);
  EXPECT_FALSE(curve_crossing(x, {1, 1, 1, 1}, {2, 2, 2, 2}).has_value());
  EXPECT_NEAR(*curve_crossing(x, {0, 1, 1, 1}, {0.5, 0.5, 0.5, 0.5}), 0.5, 1e-15);
}

TEST(EaScan, DeterministicAndShaped) {
  EaScanConfig c;
  c.kind = EaKind::Mbl;
  c.lambdas = {0.05, 0.3};
  c.sizes = {4, 6};
  c.n_samples = 4;
  const EaScanResult a = ea_crossing_scan(c);
  const EaScanResult b = ea_crossing_scan(c);
  ASSERT_EQ(a.chi.size(), 2u);
  ASSERT_EQ(a.chi[0].size(), 2u);
  EXPECT_EQ(a.chi, b.chi);
  // Localized at small lambda: correlations stay close to the maximal N.
  EXPECT_GT(a.chi[1][0], a.chi[1][1]);
}

TEST(MblScan, StatsOrdered) {
  DisorderEnsemble e;
  e.n_samples = 10;
  const MblScanResult r =
      mbl_ensemble_scan(e, SpinPattern::from_string("011001"), {0.05, 0.2}, FloquetSpec::experiment(6, 0.0));
  ASSERT_EQ(r.stats.size(), 2u);
  EXPECT_EQ(r.rows.size(), 20u);
  for (const auto& st : r.stats) {
    EXPECT_LE(st.bottom10, st.mean);
    EXPECT_LE(st.mean, st.top10);
  }
  EXPECT_GT(r.stats[0].mean, r.stats[1].mean);
}
