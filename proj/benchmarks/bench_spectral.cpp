#include <benchmark/benchmark.h>

#include "catdtc/catdtc.hpp"

using namespace catdtc;

static void BM_BuildFloquetMatrix(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const FloquetSpec s = FloquetSpec::experiment(n, 0.05);
  for (auto _ : st) benchmark::DoNotOptimize(build_floquet_matrix(s).data.data());
}
BENCHMARK(BM_BuildFloquetMatrix)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

// Dominated by the Hermitian eigensolver on (U + U^dag) / 2.
static void BM_Diagonalize(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const FloquetMatrix m = build_floquet_matrix(FloquetSpec::experiment(n, 0.05));
  for (auto _ : st) benchmark::DoNotOptimize(diagonalize(m).max_residual);
  st.counters["dim"] = static_cast<double>(m.dim);
}
BENCHMARK(BM_Diagonalize)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_EdwardsAnderson(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const StateVector s = ghz_state(SpinPattern::neel(n));
  for (auto _ : st) benchmark::DoNotOptimize(edwards_anderson(s.amps(), n));
}
BENCHMARK(BM_EdwardsAnderson)->DenseRange(8, 12, 2);

static void BM_ButterflyVelocity(benchmark::State& st) {
  double phi = -1.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(butterfly_velocity(0.05, 0.05, phi, 0.97).vB);
    phi += 1e-6;
  }
}
BENCHMARK(BM_ButterflyVelocity);
