#include "catdtc/obs.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "catdtc/analytics.hpp"
#include "catdtc/rng.hpp"

namespace catdtc {

ZMoments ZMoments::of(const StateVector& state) {
  const int n = state.n_qubits();
  ZMoments m;
  m.n = n;
  m.z.assign(static_cast<std::size_t>(n), 0.0);
  m.zz.assign(static_cast<std::size_t>(n * n), 0.0);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const double p = std::norm(state[i]);
    if (p == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double zj = ((i >> j) & 1u) ? -p : p;
      m.z[static_cast<std::size_t>(j)] += zj;
      for (int k = j + 1; k < n; ++k) {
        m.zz[static_cast<std::size_t>(j * n + k)] += ((i >> k) & 1u) ? -zj : zj;
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    m.zz[static_cast<std::size_t>(j * n + j)] = 1.0;
    for (int k = j + 1; k < n; ++k) {
      m.zz[static_cast<std::size_t>(k * n + j)] = m.zz[static_cast<std::size_t>(j * n + k)];
    }
  }
  return m;
}

void ZMoments::accumulate(const ZMoments& other, double weight) {
  if (n == 0) {
    n = other.n;
    z.assign(other.z.size(), 0.0);
    zz.assign(other.zz.size(), 0.0);
  }
  if (other.n != n) throw std::invalid_argument("moment sizes differ");
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += weight * other.z[i];
  for (std::size_t i = 0; i < zz.size(); ++i) zz[i] += weight * other.zz[i];
}

CorrelationMap ZMoments::correlations(int t) const {
  CorrelationMap c;
  c.n = n;
  c.t = t;
  c.g.assign(static_cast<std::size_t>(n * n), 0.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      const auto jk = static_cast<std::size_t>(j * n + k);
      c.g[jk] = std::abs(zz[jk] - z[static_cast<std::size_t>(j)] * z[static_cast<std::size_t>(k)]);
    }
  }
  return c;
}

CorrelationMap connected_correlations(const StateVector& state, int t) {
  return ZMoments::of(state).correlations(t);
}

std::vector<double> site_averaged(const CorrelationMap& g) {
  if (g.n < 2) throw std::invalid_argument("site averages need N >= 2");
  std::vector<double> out(static_cast<std::size_t>(g.n), 0.0);
  for (int j = 0; j < g.n; ++j) {
    double s = 0.0;
    for (int k = 0; k < g.n; ++k)
      if (k != j) s += g(j, k);
    out[static_cast<std::size_t>(j)] = s / (g.n - 1);
  }
  return out;
}

int domain_walls(const SpinPattern& pattern, bool ring) {
  const int n = pattern.size();
  int walls = 0;
  for (int j = 0; j + 1 < n; ++j) walls += pattern[j] != pattern[j + 1];
  if (ring && n > 1) walls += pattern[n - 1] != pattern[0];
  return walls;
}

std::vector<int> flippable_sites(const SpinPattern& pattern, const std::vector<int>& j_signs) {
  const int n = pattern.size();
  if (static_cast<int>(j_signs.size()) != n) throw std::invalid_argument("one bond sign per site needed");
  std::vector<int> out;
  for (int j = 0; j < n; ++j) {
    const int left = (j + n - 1) % n;
    const int right = (j + 1) % n;
    const int e = j_signs[static_cast<std::size_t>(left)] * (2 * pattern[left] - 1) +
                  j_signs[static_cast<std::size_t>(j)] * (2 * pattern[right] - 1);
    if (e == 0) out.push_back(j);
  }
  return out;
}

LightconeReport lightcone_scan(const SpinPattern& initial, const FloquetSpec& dtc, int cycles,
                               const LightconeOptions& opts) {
  dtc.validate();
  const int n = dtc.n;
  if (initial.size() != n) throw std::invalid_argument("initial pattern length must equal N");
  if (cycles < 0) throw std::invalid_argument("cycles must be non-negative");
  if (n > 24) throw std::length_error("lightcone scan is limited to N <= 24");
  LightconeReport rep;
  rep.centers = opts.centers.empty() ? flippable_sites(initial, dtc.j_signs) : opts.centers;
  for (int c : rep.centers)
    if (c < 0 || c >= n) throw std::out_of_range("lightcone center outside the ring");

  const Circuit cycle = build_floquet_circuit(dtc);
  std::vector<ZMoments> mom(static_cast<std::size_t>(cycles) + 1);
  if (!opts.noise) {
    StateVector s = ghz_state(initial);
    for (int t = 0; t <= cycles; ++t) {
      if (t > 0) execute(cycle, s);
      mom[static_cast<std::size_t>(t)] = ZMoments::of(s);
    }
  } else {
    opts.noise->validate();
    if (opts.n_traj < 1) throw std::invalid_argument("n_traj must be >= 1");
    const Rng root(opts.seed);
    const double w = 1.0 / opts.n_traj;
    for (int r = 0; r < opts.n_traj; ++r) {
      Rng rng = root.split(static_cast<std::uint64_t>(r));
      StateVector s = ghz_state(initial);
      for (int t = 0; t <= cycles; ++t) {
        if (t > 0) mc_execute(cycle, *opts.noise, rng, s);
        mom[static_cast<std::size_t>(t)].accumulate(ZMoments::of(s), w);
      }
    }
  }

  std::vector<double> g0;
  std::vector<double> ts, rs;
  for (int t = 0; t <= cycles; ++t) {
    CorrelationMap m = mom[static_cast<std::size_t>(t)].correlations(t);
    std::vector<double> gj = site_averaged(m);
    if (t == 0) g0 = gj;
    int radius = -1;
    for (int j = 0; j < n; ++j) {
      if (!(gj[static_cast<std::size_t>(j)] < opts.threshold * g0[static_cast<std::size_t>(j)])) continue;
      int d = n;
      for (int c : rep.centers) d = std::min(d, std::min(std::abs(j - c), n - std::abs(j - c)));
      if (rep.centers.empty()) d = 0;
      radius = std::max(radius, d);
    }
    rep.radius.push_back(radius);
    if (radius >= 0) {
      ts.push_back(t);
      rs.push_back(radius);
    }
    rep.g_site.push_back(std::move(gj));
    rep.maps.push_back(std::move(m));
  }
  if (ts.size() >= 2 && ts.front() != ts.back()) rep.velocity = fit_polynomial(ts, rs, 1).coef[1];
  return rep;
}

void write_site_csv(std::ostream& os, const LightconeReport& r) {
  os << "t,j,G_j\n" << std::setprecision(17);
  for (std::size_t t = 0; t < r.g_site.size(); ++t)
    for (std::size_t j = 0; j < r.g_site[t].size(); ++j) os << t << ',' << j << ',' << r.g_site[t][j] << '\n';
}

void write_pair_csv(std::ostream& os, const LightconeReport& r) {
  os << "t,j,k,G_jk\n" << std::setprecision(17);
  for (const auto& m : r.maps)
    for (int j = 0; j < m.n; ++j)
      for (int k = 0; k < m.n; ++k) os << m.t << ',' << j << ',' << k << ',' << m(j, k) << '\n';
}

}  // namespace catdtc
