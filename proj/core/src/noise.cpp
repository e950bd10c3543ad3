#include "catdtc/noise.hpp"

#include <lapacke.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace catdtc {

namespace {

constexpr std::array<GateErrorRow, 5> kGhzGateErrors{{
    {2, 1, 0.00049, 0.00256},
    {4, 2, 0.00031, 0.00148},
    {8, 3, 0.00045, 0.00199},
    {14, 4, 0.00064, 0.00225},
    {20, 5, 0.00056, 0.00227},
}};

void relax(StateVector& s, int q, double dur, const NoiseModel& m, Rng& rng) {
  const std::size_t bit = std::size_t{1} << q;
  auto a = s.amps();
  const double gamma = 1.0 - std::exp(-dur / m.t1);
  double p1 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (i & bit) p1 += std::norm(a[i]);

  if (rng.uniform() < gamma * p1) {
    // Jump: sigma^- moves the |1> component down and removes the rest.
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i & bit) continue;
      a[i] = a[i | bit];
      a[i | bit] = 0.0;
    }
  } else {
    const double k = std::sqrt(1.0 - gamma);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (i & bit) a[i] *= k;
  }
  s.normalize();

  const double rate = 1.0 / m.t2se - 0.5 / m.t1;
  if (rate > 0.0) {
    const double pz = 0.5 * (1.0 - std::exp(-dur * rate));
    if (rng.uniform() < pz) apply_pauli(s, q, 3);
  }
}

}  // namespace

std::span<const GateErrorRow> ghz_gate_error_table() { return kGhzGateErrors; }

NoiseModel NoiseModel::for_ghz(int n) {
  for (const auto& row : kGhzGateErrors) {
    if (row.n == n) {
      NoiseModel m;
      m.ep_1q = row.ep_1q;
      m.ep_2q = row.ep_2q;
      return m;
    }
  }
  throw std::invalid_argument("no gate error rates tabulated for N=" + std::to_string(n));
}

NoiseModel NoiseModel::depolarizing(double ep_1q, double ep_2q) {
  NoiseModel m;
  m.ep_1q = ep_1q;
  m.ep_2q = ep_2q;
  m.relaxation = false;
  m.idle = false;
  return m;
}

NoiseModel NoiseModel::noiseless() { return depolarizing(0.0, 0.0); }

bool NoiseModel::trivial() const { return ep_1q == 0.0 && ep_2q == 0.0 && !relaxation; }

void NoiseModel::validate() const {
  if (ep_1q < 0.0 || ep_1q >= 1.0) throw std::invalid_argument("ep_1q must lie in [0, 1)");
  if (ep_2q < 0.0 || ep_2q >= 1.0) throw std::invalid_argument("ep_2q must lie in [0, 1)");
  if (!(dur_1q > 0.0) || !(dur_2q > 0.0)) throw std::invalid_argument("gate durations must be positive");
  if (relaxation) {
    if (!(t1 > 0.0) || !(t2se > 0.0)) throw std::invalid_argument("t1 and t2se must be positive");
    if (t2se > 2.0 * t1) throw std::invalid_argument("t2se must not exceed 2 t1");
  }
}

void apply_pauli(StateVector& state, int q, int p) {
  switch (p) {
    case 0: return;
    case 1: apply_1q(state, q, gates::pauli_x()); return;
    case 2: apply_1q(state, q, gates::pauli_y()); return;
    case 3: kernels::apply_diag_1q(state.amps(), q, 1.0, -1.0); return;
    default: throw std::invalid_argument("Pauli index must be 0..3");
  }
}

void mc_execute(const Circuit& circuit, const NoiseModel& model, Rng& rng, StateVector& state) {
  if (state.n_qubits() != circuit.n_qubits) {
    throw std::invalid_argument("circuit and state have different qubit counts");
  }
  const int n = circuit.n_qubits;
  std::vector<double> busy(static_cast<std::size_t>(n));
  for (const auto& layer : circuit.layers) {
    std::fill(busy.begin(), busy.end(), 0.0);
    bool has_2q = false;
    for (const Gate& g : layer) {
      apply_gate(state, g);
      if (g.two_qubit()) {
        has_2q = true;
        busy[static_cast<std::size_t>(g.q0)] = busy[static_cast<std::size_t>(g.q1)] = model.dur_2q;
        if (model.ep_2q > 0.0 && rng.bernoulli(model.ep_2q)) {
          const int k = 1 + static_cast<int>(rng.below(15));
          apply_pauli(state, g.q0, k / 4);
          apply_pauli(state, g.q1, k % 4);
        }
      } else {
        busy[static_cast<std::size_t>(g.q0)] = model.dur_1q;
        if (model.ep_1q > 0.0 && rng.bernoulli(model.ep_1q)) {
          apply_pauli(state, g.q0, 1 + static_cast<int>(rng.below(3)));
        }
      }
    }
    if (!model.relaxation) continue;
    const double layer_dur = has_2q ? model.dur_2q : model.dur_1q;
    for (int q = 0; q < n; ++q) {
      const double d = model.idle ? layer_dur : busy[static_cast<std::size_t>(q)];
      if (d > 0.0) relax(state, q, d, model, rng);
    }
  }
}

StateVector mc_trajectory(const Circuit& circuit, const NoiseModel& model, Rng& rng) {
  StateVector s(circuit.n_qubits);
  mc_execute(circuit, model, rng, s);
  return s;
}

McEstimate mc_expectation(const Circuit& circuit, const NoiseModel& model, const Observable& obs,
                          int n_traj, std::uint64_t seed, int groups) {
  if (n_traj < 1) throw std::invalid_argument("mc_expectation needs n_traj >= 1");
  if (groups < 1) throw std::invalid_argument("mc_expectation needs at least one seed group");
  model.validate();
  McEstimate est;
  est.n_traj = n_traj;
  std::vector<double> values(static_cast<std::size_t>(n_traj));
  const int g_eff = std::min(groups, n_traj);
  for (int g = 0; g < g_eff; ++g) est.group_seeds.push_back(splitmix64(seed + static_cast<std::uint64_t>(g)));

#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < n_traj; ++i) {
    const int g = i % g_eff;
    Rng r = Rng(est.group_seeds[static_cast<std::size_t>(g)]).split(static_cast<std::uint64_t>(i / g_eff));
    const StateVector s = mc_trajectory(circuit, model, r);
    values[static_cast<std::size_t>(i)] = obs(s);
  }

  std::vector<double> sum(static_cast<std::size_t>(g_eff), 0.0);
  std::vector<int> cnt(static_cast<std::size_t>(g_eff), 0);
  for (int i = 0; i < n_traj; ++i) {
    sum[static_cast<std::size_t>(i % g_eff)] += values[static_cast<std::size_t>(i)];
    ++cnt[static_cast<std::size_t>(i % g_eff)];
  }
  double total = 0.0;
  for (int g = 0; g < g_eff; ++g) {
    est.group_means.push_back(sum[static_cast<std::size_t>(g)] / cnt[static_cast<std::size_t>(g)]);
    total += sum[static_cast<std::size_t>(g)];
  }
  est.mean = total / n_traj;
  if (g_eff > 1) {
    const double m = std::accumulate(est.group_means.begin(), est.group_means.end(), 0.0) / g_eff;
    double var = 0.0;
    for (double v : est.group_means) var += (v - m) * (v - m);
    est.std_error = std::sqrt(var / (g_eff - 1)) / std::sqrt(static_cast<double>(g_eff));
  }
  return est;
}

// ------------------------------------------------------------------ readout

ReadoutModel ReadoutModel::uniform(int n, double f0, double f1) {
  ReadoutModel m;
  m.f0.assign(static_cast<std::size_t>(n), f0);
  m.f1.assign(static_cast<std::size_t>(n), f1);
  m.validate();
  return m;
}

std::array<double, 4> ReadoutModel::confusion(int q) const {
  const double a = f0.at(static_cast<std::size_t>(q));
  const double b = f1.at(static_cast<std::size_t>(q));
  return {a, 1.0 - a, 1.0 - b, b};
}

void ReadoutModel::validate() const {
  if (f0.size() != f1.size()) throw std::invalid_argument("readout f0 and f1 differ in length");
  if (f0.empty()) throw std::invalid_argument("readout model has no qubits");
  for (std::size_t q = 0; q < f0.size(); ++q) {
    if (!(f0[q] > 0.0 && f0[q] <= 1.0 && f1[q] > 0.0 && f1[q] <= 1.0)) {
      throw std::invalid_argument("readout fidelities must lie in (0, 1]");
    }
  }
}

namespace {

int qubits_for(std::size_t dim, const ReadoutModel& model) {
  const int n = model.n_qubits();
  if (dim != (std::size_t{1} << n)) {
    throw std::invalid_argument("data length does not match the readout model's qubit count");
  }
  return n;
}

}  // namespace

std::vector<std::uint64_t> apply_readout_noise(std::span<const double> probabilities,
                                               const ReadoutModel& model, Rng& rng,
                                               std::uint64_t shots) {
  model.validate();
  const int n = qubits_for(probabilities.size(), model);
  std::discrete_distribution<std::size_t> pick(probabilities.begin(), probabilities.end());
  std::vector<std::uint64_t> counts(probabilities.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    std::size_t i = pick(rng.engine());
    for (int q = 0; q < n; ++q) {
      const std::size_t bit = std::size_t{1} << q;
      const double keep = (i & bit) ? model.f1[static_cast<std::size_t>(q)] : model.f0[static_cast<std::size_t>(q)];
      if (rng.uniform() >= keep) i ^= bit;
    }
    ++counts[i];
  }
  return counts;
}

std::vector<double> ReadoutCorrection::dense(int n_qubits) const {
  std::vector<double> out(std::size_t{1} << n_qubits, 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) out[basis[i]] = probabilities[i];
  return out;
}

ReadoutCorrection correct_truncated(std::span<const std::uint64_t> counts, const ReadoutModel& model,
                                    std::size_t top_k) {
  model.validate();
  const int n = qubits_for(counts.size(), model);
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  if (total == 0.0) throw std::invalid_argument("no counts to correct");
  if (top_k == 0) throw std::invalid_argument("top_k must be positive");

  std::vector<std::uint64_t> seen;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] > 0) seen.push_back(i);
  std::stable_sort(seen.begin(), seen.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return counts[a] > counts[b]; });
  if (seen.size() > top_k) seen.resize(top_k);
  const std::size_t k = seen.size();

  std::vector<std::array<double, 4>> conf(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) conf[static_cast<std::size_t>(q)] = model.confusion(q);

  // A[a][b] = P(measure seen[a] | true seen[b]); column-major.
  std::vector<double> a(k * k);
  for (std::size_t col = 0; col < k; ++col) {
    for (std::size_t row = 0; row < k; ++row) {
      double p = 1.0;
      for (int q = 0; q < n; ++q) {
        const int t = static_cast<int>((seen[col] >> q) & 1u);
        const int m = static_cast<int>((seen[row] >> q) & 1u);
        p *= conf[static_cast<std::size_t>(q)][static_cast<std::size_t>(2 * t + m)];
      }
      a[row + col * k] = p;
    }
  }
  std::vector<double> b(k);
  for (std::size_t i = 0; i < k; ++i) b[i] = static_cast<double>(counts[seen[i]]) / total;

  const auto lk = static_cast<lapack_int>(k);
  const double anorm = LAPACKE_dlange(LAPACK_COL_MAJOR, '1', lk, lk, a.data(), lk);
  std::vector<lapack_int> ipiv(k);
  lapack_int info = LAPACKE_dgetrf(LAPACK_COL_MAJOR, lk, lk, a.data(), lk, ipiv.data());
  ReadoutCorrection out;
  if (info > 0) {
    throw std::runtime_error("restricted confusion matrix is singular (rcond = 0)");
  }
  LAPACKE_dgecon(LAPACK_COL_MAJOR, '1', lk, a.data(), lk, anorm, &out.rcond);
  info = LAPACKE_dgetrs(LAPACK_COL_MAJOR, 'N', lk, 1, a.data(), lk, ipiv.data(), b.data(), lk);
  if (info != 0) throw std::runtime_error("restricted readout solve failed");

  double s = 0.0;
  for (auto& v : b) {
    v = std::max(v, 0.0);
    s += v;
  }
  if (s > 0.0)
    for (auto& v : b) v /= s;
  out.basis = std::move(seen);
  out.probabilities = std::move(b);
  return out;
}

std::vector<double> correct_full_tensor(std::span<const double> measured, const ReadoutModel& model) {
  model.validate();
  const int n = qubits_for(measured.size(), model);
  std::vector<double> p(measured.begin(), measured.end());
  for (int q = 0; q < n; ++q) {
    // measured = C true with C[m][t] = M[t][m]; invert the 2x2 C.
    const auto m = model.confusion(q);
    const double c00 = m[0], c01 = m[2], c10 = m[1], c11 = m[3];
    const double det = c00 * c11 - c01 * c10;
    if (std::abs(det) < 1e-12) {
      throw std::runtime_error("single-qubit confusion matrix of qubit " + std::to_string(q) +
                               " is not invertible");
    }
    const double i00 = c11 / det, i01 = -c01 / det, i10 = -c10 / det, i11 = c00 / det;
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i & bit) continue;
      const double x0 = p[i], x1 = p[i | bit];
      p[i] = i00 * x0 + i01 * x1;
      p[i | bit] = i10 * x0 + i11 * x1;
    }
  }
  return p;
}

}  // namespace catdtc
