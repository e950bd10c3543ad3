#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "catdtc/circuit.hpp"
#include "catdtc/noise.hpp"
#include "catdtc/qstate.hpp"

namespace catdtc {

// G_jk = |<Z_j Z_k> - <Z_j><Z_k>|, zero diagonal.
struct CorrelationMap {
  int n = 0;
  int t = 0;
  std::vector<double> g;  // row-major n x n

  double operator()(int j, int k) const { return g[static_cast<std::size_t>(j * n + k)]; }
};

// First and second sigma^z moments, averageable across trajectories.
struct ZMoments {
  int n = 0;
  std::vector<double> z;   // <Z_j>
  std::vector<double> zz;  // <Z_j Z_k>, row-major

  static ZMoments of(const StateVector& state);
  void accumulate(const ZMoments& other, double weight);
  CorrelationMap correlations(int t = 0) const;
};

CorrelationMap connected_correlations(const StateVector& state, int t = 0);
// G_j = (1/(N-1)) sum_{k != j} G_jk.
std::vector<double> site_averaged(const CorrelationMap& g);

int domain_walls(const SpinPattern& pattern, bool ring = true);
// Sites whose flip conserves sum_j J_j (2s_j - 1)(2s_{j+1} - 1) on a ring.
std::vector<int> flippable_sites(const SpinPattern& pattern, const std::vector<int>& j_signs);

struct LightconeOptions {
  double threshold = 0.5;    // thermalized once G_j < threshold * G_j(0)
  std::vector<int> centers;  // empty: flippable sites of the initial pattern
  const NoiseModel* noise = nullptr;
  int n_traj = 100;
  std::uint64_t seed = 1;
};

struct LightconeReport {
  std::vector<int> centers;
  std::vector<int> radius;                // per t; -1 when nothing thermalized
  std::vector<std::vector<double>> g_site;  // [t][j]
  std::vector<CorrelationMap> maps;       // per t
  double velocity = 0.0;                  // least-squares slope of radius vs t
};

// Evolves the GHZ state of `initial` under `dtc` and tracks G_j(t).
LightconeReport lightcone_scan(const SpinPattern& initial, const FloquetSpec& dtc, int cycles,
                               const LightconeOptions& opts = {});

// Heatmap CSVs: (t, j, G_j) and (t, j, k, G_jk).
void write_site_csv(std::ostream& os, const LightconeReport& r);
void write_pair_csv(std::ostream& os, const LightconeReport& r);

}  // namespace catdtc
