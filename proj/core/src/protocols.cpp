#include "catdtc/protocols.hpp"

#include <lapacke.h>

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "catdtc/rng.hpp"

namespace catdtc {

namespace {

constexpr double kSupportCut = 1e-12;
constexpr std::size_t kMaxLinearSupport = 64;

StateVector run_from_zero(const Circuit& c) {
  StateVector s(c.n_qubits);
  execute(c, s);
  return s;
}

void check_pattern(const Circuit& prep, const SpinPattern& pattern) {
  if (pattern.size() != prep.n_qubits) {
    throw std::invalid_argument("pattern length does not match the preparation circuit");
  }
}

// w(i) = sum_q b_q(i) (-1)^{s_q}: the phase weight of Z((-1)^{s_q} phi).
std::vector<int> z_weights(const SpinPattern& s) {
  const int n = s.size();
  std::vector<int> w(std::size_t{1} << n, 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    int v = 0;
    for (int q = 0; q < n; ++q)
      if ((i >> q) & 1u) v += s[q] ? -1 : 1;
    w[i] = v;
  }
  return w;
}

Layer x_layer(int n) {
  Layer l;
  for (int q = 0; q < n; ++q) l.push_back(Gate::x(q, kPi));
  return l;
}

Layer z_layer(const SpinPattern& s, double phi) {
  Layer l;
  for (int q = 0; q < s.size(); ++q) l.push_back(Gate::z(q, s[q] ? -phi : phi));
  return l;
}

void run_part(const Circuit& c, const NoiseModel* noise, Rng& rng, StateVector& s) {
  if (noise) {
    mc_execute(c, *noise, rng, s);
  } else {
    execute(c, s);
  }
}

}  // namespace

Circuit ghz_line_prep(const SpinPattern& pattern) {
  return compile(generate_ghz_circuit(Layout2D::full(1, pattern.size()), pattern).circuit);
}

// ------------------------------------------------------------------ MQC

std::vector<double> mqc_sparse_grid(int n) {
  if (n < 1) throw std::invalid_argument("grid needs N >= 1");
  std::vector<double> g(static_cast<std::size_t>(2 * n + 2));
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = kPi * static_cast<double>(j) / (n + 1);
  return g;
}

std::vector<double> mqc_dense_grid(int n) {
  if (n < 1) throw std::invalid_argument("grid needs N >= 1");
  std::vector<double> g(static_cast<std::size_t>(8 * n + 2));
  for (std::size_t j = 0; j < g.size(); ++j) {
    g[j] = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(g.size());
  }
  return g;
}

std::string grid_name(GridKind k) {
  switch (k) {
    case GridKind::Sparse: return "sparse";
    case GridKind::Dense: return "dense";
    case GridKind::Custom: return "custom";
  }
  return "custom";
}

MqcTrace mqc_run(const Circuit& prep, const SpinPattern& pattern, const std::vector<double>& phis,
                 const MqcOptions& opts) {
  check_pattern(prep, pattern);
  if (phis.empty()) throw std::invalid_argument("MQC grid is empty");
  const int n = prep.n_qubits;
  MqcTrace tr;
  tr.n = n;
  tr.phis = phis;
  tr.values.resize(phis.size());
  tr.seed = opts.seed;

  if (!opts.noise) {
    // The reversal is exact, so P(0) = |<psi_P| Z_phi X psi_P>|^2. Grouping
    // amplitudes by phase weight makes every phi an O(N) sum.
    tr.n_traj = 1;
    const StateVector psi = run_from_zero(prep);
    StateVector chi = psi;
    for (int q = 0; q < n; ++q) apply_1q(chi, q, gates::x_rotation(kPi));
    const std::vector<int> w = z_weights(pattern);
    std::vector<cplx> c(static_cast<std::size_t>(2 * n + 1), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < psi.dim(); ++i) {
      c[static_cast<std::size_t>(w[i] + n)] += std::conj(psi[i]) * chi[i];
    }
    for (std::size_t k = 0; k < phis.size(); ++k) {
      cplx s{0.0, 0.0};
      for (int v = -n; v <= n; ++v) s += c[static_cast<std::size_t>(v + n)] * std::polar(1.0, phis[k] * v);
      tr.values[k] = std::min(1.0, std::norm(s));
    }
    return tr;
  }

  opts.noise->validate();
  if (opts.n_traj < 1) throw std::invalid_argument("MQC needs n_traj >= 1");
  tr.n_traj = opts.n_traj;
  const Circuit undo = inverse(prep);
  const Rng root(opts.seed);
  for (std::size_t k = 0; k < phis.size(); ++k) {
    Circuit fwd = prep;
    fwd.add_layer(x_layer(n));
    fwd.add_layer(z_layer(pattern, phis[k]));
    std::vector<double> v(static_cast<std::size_t>(opts.n_traj));
#pragma omp parallel for schedule(dynamic, 8)
    for (int r = 0; r < opts.n_traj; ++r) {
      Rng rng = root.split(k).split(static_cast<std::uint64_t>(r));
      StateVector s(n);
      mc_execute(fwd, *opts.noise, rng, s);
      run_part(undo, opts.noisy_reversal ? opts.noise : nullptr, rng, s);
      v[static_cast<std::size_t>(r)] = std::norm(s[0]);
    }
    double sum = 0.0;
    for (double x : v) sum += x;
    tr.values[k] = sum / opts.n_traj;
  }
  return tr;
}

MqcTrace mqc_run(const Circuit& prep, const SpinPattern& pattern, GridKind grid,
                 const MqcOptions& opts) {
  std::vector<double> phis;
  switch (grid) {
    case GridKind::Sparse: phis = mqc_sparse_grid(prep.n_qubits); break;
    case GridKind::Dense: phis = mqc_dense_grid(prep.n_qubits); break;
    case GridKind::Custom: throw std::invalid_argument("custom grids need explicit angles");
  }
  MqcTrace tr = mqc_run(prep, pattern, phis, opts);
  tr.grid = grid;
  return tr;
}

double MqcSpectrum::at(int order) const {
  if (order < -n || order > n) throw std::out_of_range("coherence order outside [-N, N]");
  return amplitudes[static_cast<std::size_t>(order + n)];
}

double fourier_component(const std::vector<double>& phis, const std::vector<double>& values, int q) {
  if (phis.empty() || phis.size() != values.size()) {
    throw std::invalid_argument("fourier_component needs matching nonempty series");
  }
  cplx s{0.0, 0.0};
  for (std::size_t k = 0; k < phis.size(); ++k) s += std::polar(values[k], q * phis[k]);
  return std::abs(s) / static_cast<double>(phis.size());
}

MqcSpectrum mqc_fourier(const MqcTrace& trace) {
  MqcSpectrum sp;
  sp.n = trace.n;
  for (int q = -trace.n; q <= trace.n; ++q) {
    sp.q.push_back(q);
    sp.amplitudes.push_back(fourier_component(trace.phis, trace.values, q));
  }
  return sp;
}

GhzFidelityReport ghz_fidelity(double P_s, double P_sbar, const MqcSpectrum& spectrum) {
  GhzFidelityReport r;
  r.P_s = P_s;
  r.P_sbar = P_sbar;
  r.offdiag = std::sqrt(spectrum.at(spectrum.n));
  r.F = 0.5 * (P_s + P_sbar) + r.offdiag;
  return r;
}

GhzFidelityReport ghz_fidelity(const StateVector& state, const SpinPattern& pattern,
                               const MqcSpectrum& spectrum) {
  return ghz_fidelity(std::norm(state[pattern.index()]),
                      std::norm(state[pattern.complement().index()]), spectrum);
}

// ------------------------------------------------------------------ parity

std::vector<double> parity_scan(const StateVector& state, const SpinPattern& pattern,
                                const std::vector<double>& gammas) {
  const int n = state.n_qubits();
  if (pattern.size() != n) throw std::invalid_argument("pattern length does not match the state");
  if (n % 2 != 0) throw std::invalid_argument("parity oscillation needs even N");
  const std::size_t full = state.dim() - 1;
  std::vector<double> out;
  out.reserve(gammas.size());
  std::vector<cplx> from0(static_cast<std::size_t>(n)), from1(static_cast<std::size_t>(n));
  for (double gamma : gammas) {
    // O_j = e_j [[0, -i e^{i g}], [i e^{-i g}, 0]], e_j = 2 s_j - 1, g = e_j gamma.
    for (int j = 0; j < n; ++j) {
      const double e = 2.0 * pattern[j] - 1.0;
      const double g = e * gamma;
      from0[static_cast<std::size_t>(j)] = e * cplx{0.0, 1.0} * std::polar(1.0, -g);   // (O_j)_{1,0}
      from1[static_cast<std::size_t>(j)] = e * cplx{0.0, -1.0} * std::polar(1.0, g);   // (O_j)_{0,1}
    }
    cplx s{0.0, 0.0};
#pragma omp parallel
    {
      cplx local{0.0, 0.0};
#pragma omp for schedule(static) nowait
      for (std::size_t i = 0; i <= full; ++i) {
        if (state[i] == cplx{0.0, 0.0}) continue;
        cplx f{1.0, 0.0};
        for (int j = 0; j < n; ++j) {
          f *= ((i >> j) & 1u) ? from1[static_cast<std::size_t>(j)] : from0[static_cast<std::size_t>(j)];
        }
        local += std::conj(state[full ^ i]) * f * state[i];
      }
#pragma omp critical
      s += local;
    }
    out.push_back(s.real());
  }
  return out;
}

ParityFit fit_parity(const std::vector<double>& gammas, const std::vector<double>& values, int n) {
  if (gammas.size() != values.size() || gammas.size() < 2) {
    throw std::invalid_argument("parity fit needs at least two matching points");
  }
  const std::size_t m = gammas.size();
  std::vector<double> a(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    a[i] = std::cos(n * gammas[i]);
    a[i + m] = std::sin(n * gammas[i]);
  }
  std::vector<double> b(values);
  const auto lm = static_cast<lapack_int>(m);
  if (LAPACKE_dgels(LAPACK_COL_MAJOR, 'N', lm, 2, 1, a.data(), lm, b.data(), lm) != 0) {
    throw std::runtime_error("parity fit is rank deficient");
  }
  ParityFit f;
  f.a = b[0];
  f.b = b[1];
  f.amplitude = std::hypot(f.a, f.b);
  // a cos x + b sin x = A cos(x + C) with C = atan2(-b, a).
  f.phase = std::atan2(-f.b, f.a);
  return f;
}

// ------------------------------------------------------------ interferometry

std::vector<double> interferometry_grid(int n, int M) {
  if (n < 1 || M < 2) throw std::invalid_argument("interferometry grid needs N >= 1 and M >= 2");
  std::vector<double> g(static_cast<std::size_t>(M));
  for (int k = 0; k < M; ++k) g[static_cast<std::size_t>(k)] = -kPi / n + 2.0 * kPi * k / (n * M);
  return g;
}

InterferometryTrace cat_interferometry(const Circuit& prep, const SpinPattern& pattern,
                                       const FloquetSpec& dtc, int cycles,
                                       const InterferometryOptions& opts) {
  check_pattern(prep, pattern);
  dtc.validate();
  if (dtc.n != prep.n_qubits) throw std::invalid_argument("Floquet spec and preparation differ in N");
  if (cycles < 0) throw std::invalid_argument("cycles must be non-negative");
  if (opts.cycle_depolarizing < 0.0 || opts.cycle_depolarizing >= 1.0) {
    throw std::invalid_argument("cycle depolarizing rate must lie in [0, 1)");
  }
  if (opts.noise) opts.noise->validate();
  const bool stochastic = opts.cycle_depolarizing > 0.0 || opts.noise;
  const int n_traj = stochastic ? opts.n_traj : 1;
  if (n_traj < 1) throw std::invalid_argument("n_traj must be >= 1");

  const int n = prep.n_qubits;
  const int M = opts.M == 0 ? 2 * n + 2 : opts.M;
  InterferometryTrace tr;
  tr.n = n;
  tr.M = M;
  tr.phis = interferometry_grid(n, M);
  tr.seed = opts.seed;
  tr.n_traj = n_traj;
  for (int t = 0; t <= cycles; ++t) tr.times.push_back(t);

  const Circuit cycle = build_floquet_circuit(dtc);
  const StateVector psi_p = run_from_zero(prep);
  const std::vector<int> w = z_weights(pattern);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < psi_p.dim(); ++i)
    if (std::abs(psi_p[i]) > kSupportCut) support.push_back(i);
  const bool linear = !opts.force_direct && !opts.noise && support.size() <= kMaxLinearSupport;

  const std::size_t n_times = static_cast<std::size_t>(cycles) + 1;
  const std::size_t per_traj = n_times * static_cast<std::size_t>(M);
  std::vector<double> results(per_traj * static_cast<std::size_t>(n_traj), 0.0);
  const Rng root(opts.seed);
  const std::size_t full = psi_p.dim() - 1;

#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < n_traj; ++r) {
    Rng rng = root.split(static_cast<std::uint64_t>(r));
    // One Pauli draw per qubit and cycle, shared by every phi of the trajectory.
    std::vector<std::uint8_t> err(static_cast<std::size_t>(cycles * n), 0);
    if (opts.cycle_depolarizing > 0.0) {
      const double p4 = opts.cycle_depolarizing / 4.0;
      for (auto& e : err) {
        const double u = rng.uniform();
        e = u < p4 ? 1 : u < 2 * p4 ? 2 : u < 3 * p4 ? 3 : 0;
      }
    }
    auto apply_errors = [&](StateVector& s, int t) {
      for (int q = 0; q < n; ++q) apply_pauli(s, q, err[static_cast<std::size_t>((t - 1) * n + q)]);
    };
    double* out = results.data() + static_cast<std::size_t>(r) * per_traj;

    if (linear) {
      // psi_t(phi) = sum_b e^{i phi w(b)} psi_P(b) U^t |b>, and the reference
      // state after echo and reversal lives on the complements of the support.
      const std::size_t S = support.size();
      std::vector<StateVector> v;
      v.reserve(S);
      for (std::size_t b : support) {
        StateVector s(n);
        s[0] = 0.0;
        s[b] = 1.0;
        v.push_back(std::move(s));
      }
      std::vector<cplx> g(S * S);
      for (int t = 0; t <= cycles; ++t) {
        if (t > 0) {
          for (auto& s : v) {
            execute(cycle, s);
            apply_errors(s, t);
          }
        }
        for (std::size_t a = 0; a < S; ++a)
          for (std::size_t b = 0; b < S; ++b) g[a * S + b] = v[b][full ^ support[a]];
        for (int k = 0; k < M; ++k) {
          const double phi = tr.phis[static_cast<std::size_t>(k)];
          cplx amp{0.0, 0.0};
          for (std::size_t a = 0; a < S; ++a) {
            cplx inner{0.0, 0.0};
            for (std::size_t b = 0; b < S; ++b) {
              inner += std::polar(1.0, phi * w[support[b]]) * psi_p[support[b]] * g[a * S + b];
            }
            amp += std::conj(std::polar(1.0, phi * w[support[a]]) * psi_p[support[a]]) * inner;
          }
          out[static_cast<std::size_t>(t) * static_cast<std::size_t>(M) + static_cast<std::size_t>(k)] =
              std::norm(amp);
        }
      }
    } else {
      const Circuit undo = inverse(prep);
      for (int k = 0; k < M; ++k) {
        const double phi = tr.phis[static_cast<std::size_t>(k)];
        Rng gate_rng = rng.split(static_cast<std::uint64_t>(k));
        Circuit start(n), stop(n);
        start.add_layer(z_layer(pattern, phi));
        stop.add_layer(x_layer(n));
        stop.add_layer(z_layer(pattern, -phi));
        stop.append(undo);
        StateVector s(n);
        run_part(prep, opts.noise, gate_rng, s);
        run_part(start, opts.noise, gate_rng, s);
        for (int t = 0; t <= cycles; ++t) {
          if (t > 0) {
            run_part(cycle, opts.noise, gate_rng, s);
            apply_errors(s, t);
          }
          StateVector probe = s;
          run_part(stop, opts.noise, gate_rng, probe);
          out[static_cast<std::size_t>(t) * static_cast<std::size_t>(M) + static_cast<std::size_t>(k)] =
              std::norm(probe[0]);
        }
      }
    }
  }

  tr.values.assign(n_times, std::vector<double>(static_cast<std::size_t>(M), 0.0));
  for (int r = 0; r < n_traj; ++r) {
    const double* in = results.data() + static_cast<std::size_t>(r) * per_traj;
    for (std::size_t t = 0; t < n_times; ++t)
      for (std::size_t k = 0; k < static_cast<std::size_t>(M); ++k) tr.values[t][k] += in[t * M + k];
  }
  for (auto& row : tr.values)
    for (auto& x : row) x = std::min(1.0, x / n_traj);
  for (std::size_t t = 0; t < n_times; ++t) tr.fourier.push_back(fourier_component(tr.phis, tr.values[t], 2 * n));
  return tr;
}

// ------------------------------------------------------------------ CSV

void write_csv(std::ostream& os, const MqcTrace& trace) {
  os << "# N=" << trace.n << " grid=" << grid_name(trace.grid) << " seed=" << trace.seed
     << " n_traj=" << trace.n_traj << "\n";
  os << "phi,K\n" << std::setprecision(17);
  for (std::size_t k = 0; k < trace.phis.size(); ++k) os << trace.phis[k] << ',' << trace.values[k] << '\n';
}

void write_csv(std::ostream& os, const MqcSpectrum& spectrum, GridKind grid, std::uint64_t seed) {
  os << "# N=" << spectrum.n << " grid=" << grid_name(grid) << " seed=" << seed << "\n";
  os << "q,Kf\n" << std::setprecision(17);
  for (std::size_t i = 0; i < spectrum.q.size(); ++i) os << spectrum.q[i] << ',' << spectrum.amplitudes[i] << '\n';
}

void write_csv(std::ostream& os, const InterferometryTrace& trace) {
  os << "# N=" << trace.n << " grid=interferometry M=" << trace.M << " seed=" << trace.seed
     << " n_traj=" << trace.n_traj << "\n";
  os << "t,Kf2N\n" << std::setprecision(17);
  for (std::size_t i = 0; i < trace.times.size(); ++i) os << trace.times[i] << ',' << trace.fourier[i] << '\n';
}

}  // namespace catdtc
