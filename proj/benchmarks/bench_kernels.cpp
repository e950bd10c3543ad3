#include <benchmark/benchmark.h>

#include "catdtc/catdtc.hpp"

using namespace catdtc;

namespace {

StateVector spread_state(int n) {
  StateVector s(n);
  for (int q = 0; q < n; ++q) apply_1q(s, q, gates::hadamard());
  return s;
}

}  // namespace

static void BM_Apply1q(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  StateVector s = spread_state(n);
  const Mat2 m = GateU3{0.3, 0.7, -1.1}.matrix();
  int q = 0;
  for (auto _ : st) {
    apply_1q(s, q, m);
    q = (q + 1) % n;
    benchmark::DoNotOptimize(s.amps().data());
  }
  st.SetBytesProcessed(st.iterations() * static_cast<std::int64_t>(s.dim() * sizeof(cplx)));
}
BENCHMARK(BM_Apply1q)->DenseRange(12, 22, 5);

static void BM_Apply2qGeneral(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  StateVector s = spread_state(n);
  const Mat4 m = GateTwoQubit::fsim(0.4, 0.9, 0.1, -0.3, 0.2).matrix();
  for (auto _ : st) {
    kernels::apply_2q(s.amps(), 1, n - 2, m);
    benchmark::DoNotOptimize(s.amps().data());
  }
}
BENCHMARK(BM_Apply2qGeneral)->DenseRange(12, 22, 5);

static void BM_ApplyCphase(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  StateVector s = spread_state(n);
  const GateTwoQubit g = GateTwoQubit::cphase(-4.0);
  for (auto _ : st) {
    apply_two_qubit(s, 0, n - 1, g);
    benchmark::DoNotOptimize(s.amps().data());
  }
}
BENCHMARK(BM_ApplyCphase)->DenseRange(12, 22, 5);

static void BM_FloquetCycle(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Circuit c = build_floquet_circuit(FloquetSpec::experiment(n, 0.05));
  StateVector s = ghz_state(SpinPattern::neel(n));
  for (auto _ : st) {
    execute(c, s);
    benchmark::DoNotOptimize(s.amps().data());
  }
}
BENCHMARK(BM_FloquetCycle)->DenseRange(10, 20, 2)->Unit(benchmark::kMillisecond);

static void BM_SparseGhz(benchmark::State& st) {
  const int side = static_cast<int>(st.range(0));
  const int n = side * side;
  const Circuit c = compile(generate_ghz_circuit(Layout2D::full(side, side), SpinPattern::neel(n)).circuit);
  for (auto _ : st) {
    SparseState s(n);
    execute(c, s);
    benchmark::DoNotOptimize(s.support());
  }
}
BENCHMARK(BM_SparseGhz)->Arg(4)->Arg(6)->Arg(8);

static void BM_NoisyTrajectory(benchmark::State& st) {
  const Circuit c = compile(generate_ghz_circuit(Layout2D::full(2, 4), SpinPattern::neel(8)).circuit);
  const NoiseModel m = NoiseModel::for_ghz(8);
  Rng rng(1);
  for (auto _ : st) {
    StateVector s = mc_trajectory(c, m, rng);
    benchmark::DoNotOptimize(s.amps().data());
  }
}
BENCHMARK(BM_NoisyTrajectory);
