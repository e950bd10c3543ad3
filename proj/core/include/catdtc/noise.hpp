#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "catdtc/circuit.hpp"
#include "catdtc/qstate.hpp"
#include "catdtc/rng.hpp"

namespace catdtc {

// Placeholder coherence times in ns. Real devices report distributions, so
// these are stand-ins meant to be overridden from configuration.
inline constexpr double kPlaceholderT1 = 30000.0;
inline constexpr double kPlaceholderT2se = 20000.0;

struct GateErrorRow {
  int n = 0;
  int cz_layers = 0;
  double ep_1q = 0.0;  // Pauli error probability per gate
  double ep_2q = 0.0;
};

// Per-size gate error rates used for the noisy GHZ simulations.
std::span<const GateErrorRow> ghz_gate_error_table();

struct NoiseModel {
  double ep_1q = 0.0;
  double ep_2q = 0.0;
  double t1 = kPlaceholderT1;
  double t2se = kPlaceholderT2se;
  double dur_1q = 24.0;
  double dur_2q = 60.0;
  bool relaxation = true;   // amplitude damping and dephasing from t1, t2se
  bool idle = true;         // idle qubits decohere for the layer duration
  std::uint64_t seed = 1;

  // Gate rates from ghz_gate_error_table(); throws for sizes not listed.
  static NoiseModel for_ghz(int n);
  // Only Pauli errors, no relaxation.
  static NoiseModel depolarizing(double ep_1q, double ep_2q);
  static NoiseModel noiseless();

  bool trivial() const;
  void validate() const;
};

// Runs `circuit` on `state` inserting stochastic errors after every gate.
void mc_execute(const Circuit& circuit, const NoiseModel& model, Rng& rng, StateVector& state);
// One trajectory from |0...0>.
StateVector mc_trajectory(const Circuit& circuit, const NoiseModel& model, Rng& rng);

// Pauli p in {0: I, 1: X, 2: Y, 3: Z} on qubit q.
void apply_pauli(StateVector& state, int q, int p);

using Observable = std::function<double(const StateVector&)>;

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // spread of the seed-group means
  int n_traj = 0;
  std::vector<double> group_means;
  std::vector<std::uint64_t> group_seeds;
};

// Trajectory i belongs to group g = i mod G and draws from
// Rng(group_seeds[g]).split(i / G); results do not depend on scheduling.
McEstimate mc_expectation(const Circuit& circuit, const NoiseModel& model, const Observable& obs,
                          int n_traj, std::uint64_t seed, int groups = 5);

// ------------------------------------------------------------------ readout

struct ReadoutModel {
  std::vector<double> f0;  // P(read 0 | prepared 0) per qubit
  std::vector<double> f1;  // P(read 1 | prepared 1) per qubit

  static ReadoutModel uniform(int n, double f0, double f1);
  int n_qubits() const { return static_cast<int>(f0.size()); }
  // Row-major M[true][measured]; rows sum to 1.
  std::array<double, 4> confusion(int q) const;
  void validate() const;
};

// Samples `shots` outcomes from `probabilities` and flips bits per qubit.
std::vector<std::uint64_t> apply_readout_noise(std::span<const double> probabilities,
                                               const ReadoutModel& model, Rng& rng,
                                               std::uint64_t shots);

struct ReadoutCorrection {
  std::vector<std::uint64_t> basis;  // kept basis states, most frequent first
  std::vector<double> probabilities; // corrected, clipped and renormalized
  double rcond = 0.0;                // reciprocal condition of the restricted system

  std::vector<double> dense(int n_qubits) const;
};

// Restricts the tensor-product confusion matrix to the top_k observed
// states and solves the small linear system there.
ReadoutCorrection correct_truncated(std::span<const std::uint64_t> counts, const ReadoutModel& model,
                                    std::size_t top_k = 256);

// Applies the per-qubit inverse confusion as a Kronecker product, streaming
// one qubit at a time. Output may contain small negative quasi-probabilities.
std::vector<double> correct_full_tensor(std::span<const double> measured, const ReadoutModel& model);

}  // namespace catdtc
