#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "catdtc/circuit.hpp"
#include "catdtc/qstate.hpp"

namespace catdtc {

inline constexpr int kDenseCap = 12;
inline constexpr int kDenseHardCap = 14;

// Dense column-major 2^N x 2^N unitary.
struct FloquetMatrix {
  int n = 0;
  std::size_t dim = 0;
  std::vector<cplx> data;

  cplx operator()(std::size_t r, std::size_t c) const { return data[r + c * dim]; }
  // max |U^dag U - I|.
  double unitarity_error() const;
  std::vector<cplx> apply(std::span<const cplx> v) const;
};

// Throws above `cap`; cap may be raised to kDenseHardCap.
FloquetMatrix build_floquet_matrix(const FloquetSpec& spec, int cap = kDenseCap);

// Eigenpairs of a dense unitary (column-major), sorted by eigenphase in
// (-pi, pi]. Throws if any residual |U v - e^{i eps} v| exceeds `tol`.
struct Eigensystem {
  std::size_t dim = 0;
  std::vector<double> phases;
  std::vector<cplx> vectors;
  double max_residual = 0.0;
  double max_orthogonality_error = 0.0;
};

Eigensystem diagonalize_unitary(std::span<const cplx> u, std::size_t dim, double tol = 1e-8);

struct SpectrumReport {
  int n = 0;
  std::size_t dim = 0;
  std::vector<double> eigenphases;
  std::vector<cplx> eigenvectors;  // column m is eigenstate m
  std::vector<double> ipr;
  std::vector<double> ea;          // empty unless requested
  double max_residual = 0.0;

  std::span<const cplx> vector(std::size_t m) const {
    return {eigenvectors.data() + m * dim, dim};
  }
};

SpectrumReport diagonalize(const FloquetMatrix& m, bool with_ea = false);

double ipr(std::span<const cplx> v);
// chi = (1/(N-1)) sum_{j != k} <Z_j Z_k>^2.
double edwards_anderson(std::span<const cplx> v, int n);
std::vector<double> edwards_anderson_all(const SpectrumReport& r);

// |<m|s>|^2 + |<m|s_bar>|^2 per eigenstate.
std::vector<double> pair_overlaps(const SpectrumReport& r, const SpinPattern& s);
// Largest pair overlap; near ties go to the larger IPR.
std::size_t max_overlap_state(const SpectrumReport& r, const SpinPattern& s);

struct ScarPair {
  SpinPattern s;
  SpinPattern sbar;
  double eps_plus = 0.0;
  double eps_minus = 0.0;
  double gap = 0.0;  // |eps_minus - eps_plus| folded into [0, pi]
  double ipr_plus = 0.0;
  double ipr_minus = 0.0;
  double weight = 0.0;  // pair overlap captured by the two clusters
};

// Groups eigenphases closer than `cluster_tol` (degenerate levels), sums the
// pair overlap per group and reports the two heaviest groups.
ScarPair find_scar_pair(const SpectrumReport& r, const SpinPattern& s, double cluster_tol = 1e-9);

struct ScarPatterns {
  std::array<SpinPattern, 2> a;  // solves (2s_j-1)(2s_{j+1}-1) = sign_j
  std::array<SpinPattern, 2> b;  // a with every odd site flipped
};

ScarPatterns scar_patterns(const std::vector<int>& j_signs);

// --------------------------------------------------------------- ensembles

struct DisorderEnsemble {
  double J_mean = kPi / 4.0;
  double W = kPi / 4.0;
  int n_samples = 100;
  std::uint64_t seed = 1;
};

struct MblSampleRow {
  double lambda = 0.0;
  int sample = 0;
  double ipr_target = 0.0;
  double chi = 0.0;
  double gap = 0.0;
};

struct MblLambdaStats {
  double lambda = 0.0;
  double mean = 0.0;
  double top10 = 0.0;
  double bottom10 = 0.0;
};

struct MblScanResult {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<MblSampleRow> rows;
  std::vector<MblLambdaStats> stats;
};

// Bond magnitudes J_j ~ U[J - W/2, J + W/2] with signs compatible with
// `target`; lambda1 = lambda2 = lambda; phi angles from `base`.
MblScanResult mbl_ensemble_scan(const DisorderEnsemble& ens, const SpinPattern& target,
                                const std::vector<double>& lambdas, const FloquetSpec& base);

enum class EaKind { Scar, Mbl };

struct EaScanConfig {
  EaKind kind = EaKind::Scar;
  std::vector<double> lambdas;
  std::vector<int> sizes{6, 8, 10};
  int n_samples = 100;
  std::uint64_t seed = 7;
  double phi1 = -kPi / 2.0;
  double phi2 = kPi / 2.0 - 0.6;
};

struct EaScanResult {
  EaKind kind = EaKind::Scar;
  std::vector<double> lambdas;
  std::vector<int> sizes;
  std::vector<std::vector<double>> chi;         // [size][lambda]
  std::vector<std::vector<double>> chi_stderr;  // [size][lambda]
  std::vector<std::optional<double>> pair_crossings;  // adjacent sizes
  std::optional<double> crossing;                      // mean of pair crossings
  std::uint64_t seed = 0;
};

// Scar: random target per sample, compatible signs, chi of the max-overlap
// eigenstate. MBL: J_j ~ U[pi/8, 3pi/8], chi averaged over all eigenstates.
// Samples share their random draws across lambda.
EaScanResult ea_crossing_scan(const EaScanConfig& cfg);

// First lambda where a - b changes sign, by linear interpolation.
std::optional<double> curve_crossing(const std::vector<double>& x, const std::vector<double>& a,
                                     const std::vector<double>& b);

}  // namespace catdtc
