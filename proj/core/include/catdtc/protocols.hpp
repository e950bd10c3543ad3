#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "catdtc/circuit.hpp"
#include "catdtc/noise.hpp"
#include "catdtc/qstate.hpp"

namespace catdtc {

// GHZ preparation for `pattern` on a 1 x N line, compiled to U3 + CZ.
Circuit ghz_line_prep(const SpinPattern& pattern);

// ------------------------------------------------------------------ MQC

enum class GridKind { Sparse, Dense, Custom };

// pi j / (N + 1), j = 0 .. 2N+1.
std::vector<double> mqc_sparse_grid(int n);
// 8N + 2 uniform points on [0, 2 pi).
std::vector<double> mqc_dense_grid(int n);
std::string grid_name(GridKind k);

struct MqcTrace {
  int n = 0;
  GridKind grid = GridKind::Custom;
  std::vector<double> phis;
  std::vector<double> values;  // K(phi)
  std::uint64_t seed = 0;
  int n_traj = 1;

  std::size_t n_samples() const { return phis.size(); }
};

struct MqcOptions {
  const NoiseModel* noise = nullptr;  // null: exact simulation
  bool noisy_reversal = true;         // noise on the disentangling half too
  int n_traj = 1000;
  std::uint64_t seed = 1;
};

// prep -> X(pi) on all -> Z((-1)^{s_j} phi) -> prep^-1, then P(0...0).
MqcTrace mqc_run(const Circuit& prep, const SpinPattern& pattern, const std::vector<double>& phis,
                 const MqcOptions& opts = {});
MqcTrace mqc_run(const Circuit& prep, const SpinPattern& pattern, GridKind grid,
                 const MqcOptions& opts = {});

struct MqcSpectrum {
  int n = 0;
  std::vector<int> q;             // -N .. N
  std::vector<double> amplitudes;

  double at(int order) const;
};

// K_f(q) = |sum_k e^{i q phi_k} K(phi_k)| / N_s.
MqcSpectrum mqc_fourier(const MqcTrace& trace);
double fourier_component(const std::vector<double>& phis, const std::vector<double>& values, int q);

struct GhzFidelityReport {
  double P_s = 0.0;
  double P_sbar = 0.0;
  double offdiag = 0.0;  // sqrt(K_f(N))
  double F = 0.0;
};

GhzFidelityReport ghz_fidelity(double P_s, double P_sbar, const MqcSpectrum& spectrum);
// Populations read directly off a state.
GhzFidelityReport ghz_fidelity(const StateVector& state, const SpinPattern& pattern,
                               const MqcSpectrum& spectrum);

// ------------------------------------------------------------------ parity

// <P(gamma)> for the staggered product of rotated sigma_x / sigma_y
// operators; for a cat over (s, s_bar) this is 2|rho_{s,sbar}| cos(N gamma + C)
// up to the sign (-1)^{N/2}.
std::vector<double> parity_scan(const StateVector& state, const SpinPattern& pattern,
                                const std::vector<double>& gammas);

struct ParityFit {
  double a = 0.0;  // cos(N gamma) coefficient
  double b = 0.0;  // sin(N gamma) coefficient
  double amplitude = 0.0;
  double phase = 0.0;  // y = amplitude cos(N gamma + phase)
};

// Linear least squares with the frequency fixed at N.
ParityFit fit_parity(const std::vector<double>& gammas, const std::vector<double>& values, int n);

// ------------------------------------------------------------ interferometry

struct InterferometryOptions {
  int M = 0;                    // phi samples; 0 means 2N + 2
  double cycle_depolarizing = 0.0;  // per qubit and cycle; X, Y, Z each p/4
  int n_traj = 1;               // trajectories when any noise is on
  std::uint64_t seed = 1;
  const NoiseModel* noise = nullptr;  // per-gate noise on every circuit part
  bool force_direct = false;    // one evolution per phi even when sparse
};

struct InterferometryTrace {
  int n = 0;
  int M = 0;
  std::vector<int> times;
  std::vector<double> phis;                 // -pi/N + 2 pi k / (N M)
  std::vector<std::vector<double>> values;  // [t][k] K'(phi_k, t)
  std::vector<double> fourier;              // K'_f(2N, t)
  std::uint64_t seed = 0;
  int n_traj = 1;
};

std::vector<double> interferometry_grid(int n, int M);

// prep -> Z(+-phi) -> U_F^t -> X(pi) -> Z(-+phi) -> prep^-1, then P(0...0).
InterferometryTrace cat_interferometry(const Circuit& prep, const SpinPattern& pattern,
                                       const FloquetSpec& dtc, int cycles,
                                       const InterferometryOptions& opts = {});

// ------------------------------------------------------------------ CSV

void write_csv(std::ostream& os, const MqcTrace& trace);
void write_csv(std::ostream& os, const MqcSpectrum& spectrum, GridKind grid, std::uint64_t seed);
void write_csv(std::ostream& os, const InterferometryTrace& trace);

}  // namespace catdtc
