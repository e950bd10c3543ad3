#include "catdtc/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace catdtc {

namespace {

constexpr std::size_t kParallelDim = std::size_t{1} << 14;

void check_qubit(int n, int q) {
  if (q < 0 || q >= n) {
    throw std::out_of_range("qubit index " + std::to_string(q) +
                            " out of range for " + std::to_string(n) + " qubits");
  }
}

}  // namespace

// ---------------------------------------------------------------- SpinPattern

SpinPattern::SpinPattern(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("pattern bits must be 0 or 1");
  }
}

SpinPattern SpinPattern::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else {
      throw std::invalid_argument("pattern must contain only '0' and '1': " +
                                  std::string(text));
    }
  }
  return SpinPattern(std::move(bits));
}

SpinPattern SpinPattern::from_index(std::uint64_t index, int n) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) bits[j] = static_cast<std::uint8_t>((index >> j) & 1u);
  return SpinPattern(std::move(bits));
}

SpinPattern SpinPattern::uniform(int n, int bit) {
  return SpinPattern(std::vector<std::uint8_t>(static_cast<std::size_t>(n),
                                               static_cast<std::uint8_t>(bit)));
}

SpinPattern SpinPattern::neel(int n, int first) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) bits[j] = static_cast<std::uint8_t>((j + first) & 1);
  return SpinPattern(std::move(bits));
}

void SpinPattern::set(int j, int bit) {
  bits_.at(static_cast<std::size_t>(j)) = static_cast<std::uint8_t>(bit & 1);
}

void SpinPattern::flip(int j) { bits_.at(static_cast<std::size_t>(j)) ^= 1u; }

SpinPattern SpinPattern::complement() const {
  SpinPattern out = *this;
  for (auto& b : out.bits_) b ^= 1u;
  return out;
}

SpinPattern SpinPattern::staggered() const {
  SpinPattern out = *this;
  for (std::size_t j = 1; j < out.bits_.size(); j += 2) out.bits_[j] ^= 1u;
  return out;
}

std::uint64_t SpinPattern::index() const {
  if (bits_.size() > 63) throw std::length_error("pattern too long for a basis index");
  std::uint64_t idx = 0;
  for (std::size_t j = 0; j < bits_.size(); ++j) idx |= std::uint64_t{bits_[j]} << j;
  return idx;
}

std::string SpinPattern::str() const {
  std::string s(bits_.size(), '0');
  for (std::size_t j = 0; j < bits_.size(); ++j) s[j] = static_cast<char>('0' + bits_[j]);
  return s;
}

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 30) {
    throw std::invalid_argument("state vector supports 1..30 qubits");
  }
  amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

double StateVector::norm2() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

void StateVector::normalize() {
  const double n = std::sqrt(norm2());
  if (n == 0.0) throw std::runtime_error("cannot normalize a zero state");
  const double inv = 1.0 / n;
  for (auto& a : amps_) a *= inv;
}

// ---------------------------------------------------------------- U3

Mat2 GateU3::matrix() const {
  const double c = std::cos(alpha / 2.0);
  const double s = std::sin(alpha / 2.0);
  const cplx i{0.0, 1.0};
  return {c, -i * std::exp(i * (theta - beta)) * s,
          -i * std::exp(i * beta) * s, std::exp(i * theta) * c};
}

GateU3 GateU3::inverse() const { return {alpha, beta - theta + kPi, -theta}; }

GateU3 decompose_u3(const Mat2& m, cplx* global_phase) {
  const cplx i{0.0, 1.0};
  const double c = std::abs(m[0]);
  const double s = std::abs(m[2]);
  GateU3 g;
  g.alpha = 2.0 * std::atan2(s, c);
  double gamma = 0.0;
  if (c >= s) {
    gamma = std::arg(m[0]);
    g.theta = std::arg(m[3]) - gamma;
    g.beta = std::arg(i * m[2]) - gamma;
  } else {
    // Fix 2*gamma + theta from the determinant, then the branch of gamma
    // from the sign of the small diagonal entry.
    const double d = std::arg(m[0] * m[3] - m[1] * m[2]);
    g.theta = c > 0.0 ? std::arg(m[3] * std::conj(m[0])) : 0.0;
    gamma = 0.5 * (d - g.theta);
    if (std::real(m[0] * std::exp(-i * gamma)) < 0.0) gamma += kPi;
    g.beta = std::arg(i * m[2]) - gamma;
  }
  if (global_phase) *global_phase = std::exp(i * gamma);
  return g;
}

// ---------------------------------------------------------------- two-qubit

GateTwoQubit GateTwoQubit::cphase(double phi) {
  GateTwoQubit g;
  g.kind = TwoQubitKind::CPhase;
  g.phi = phi;
  return g;
}

GateTwoQubit GateTwoQubit::zz(double phi) {
  GateTwoQubit g;
  g.kind = TwoQubitKind::ZZ;
  g.phi = phi;
  return g;
}

GateTwoQubit GateTwoQubit::fsim(double theta, double phi, double dplus,
                                double dminus, double dminus_off) {
  GateTwoQubit g;
  g.kind = TwoQubitKind::FSim;
  g.theta = theta;
  g.phi = phi;
  g.delta_plus = dplus;
  g.delta_minus = dminus;
  g.delta_minus_off = dminus_off;
  return g;
}

GateTwoQubit GateTwoQubit::cz() {
  GateTwoQubit g;
  g.kind = TwoQubitKind::CZ;
  return g;
}

GateTwoQubit GateTwoQubit::cnot() {
  GateTwoQubit g;
  g.kind = TwoQubitKind::CNOT;
  return g;
}

Mat4 GateTwoQubit::matrix() const {
  const cplx i{0.0, 1.0};
  Mat4 m{};
  switch (kind) {
    case TwoQubitKind::CPhase:
      m[0] = m[5] = m[10] = 1.0;
      m[15] = std::exp(i * phi);
      break;
    case TwoQubitKind::CZ:
      m[0] = m[5] = m[10] = 1.0;
      m[15] = -1.0;
      break;
    case TwoQubitKind::ZZ: {
      const cplx p = std::exp(i * (phi / 4.0));
      m[0] = p;
      m[5] = std::conj(p);
      m[10] = std::conj(p);
      m[15] = p;
      break;
    }
    case TwoQubitKind::CNOT:
      m[0] = m[5] = 1.0;
      m[11] = m[14] = 1.0;
      break;
    case TwoQubitKind::FSim: {
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      m[0] = 1.0;
      m[5] = std::exp(i * (delta_plus + delta_minus)) * c;
      m[6] = -i * std::exp(i * (delta_plus - delta_minus_off)) * s;
      m[9] = -i * std::exp(i * (delta_plus + delta_minus_off)) * s;
      m[10] = std::exp(i * (delta_plus - delta_minus)) * c;
      m[15] = std::exp(i * (2.0 * delta_plus + phi));
      break;
    }
  }
  return m;
}

bool GateTwoQubit::diagonal() const {
  return kind == TwoQubitKind::CPhase || kind == TwoQubitKind::CZ ||
         kind == TwoQubitKind::ZZ;
}

GateTwoQubit GateTwoQubit::inverse() const {
  GateTwoQubit g = *this;
  switch (kind) {
    case TwoQubitKind::CPhase:
    case TwoQubitKind::ZZ:
      g.phi = -phi;
      break;
    case TwoQubitKind::CZ:
    case TwoQubitKind::CNOT:
      break;
    case TwoQubitKind::FSim:
      g.theta = -theta;
      g.phi = -phi;
      g.delta_plus = -delta_plus;
      g.delta_minus = -delta_minus;
      break;
  }
  return g;
}

// ---------------------------------------------------------------- gates

namespace gates {

Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

Mat2 hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return {r, r, r, -r};
}

Mat2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
Mat2 pauli_y() { return {0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0}; }
Mat2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

Mat2 x_rotation(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {c, cplx{0.0, -s}, cplx{0.0, -s}, c};
}

Mat2 y_rotation(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {c, -s, s, c};
}

Mat2 z_phase(double theta) {
  return {1.0, 0.0, 0.0, std::exp(cplx{0.0, theta})};
}

Mat2 z_rotation(double theta) {
  return {std::exp(cplx{0.0, -theta / 2.0}), 0.0, 0.0, std::exp(cplx{0.0, theta / 2.0})};
}

Mat2 multiply(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 adjoint(const Mat2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k)
      for (int col = 0; col < 4; ++col) c[4 * r + col] += a[4 * r + k] * b[4 * k + col];
  return c;
}

double distance_up_to_phase(const Mat2& a, const Mat2& b) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < 4; ++k)
    if (std::abs(b[k]) > std::abs(b[best])) best = k;
  const cplx ph = a[best] / b[best];
  const cplx unit = ph / std::abs(ph);
  double d = 0.0;
  for (std::size_t k = 0; k < 4; ++k) d = std::max(d, std::abs(a[k] - unit * b[k]));
  return d;
}

}  // namespace gates

// ---------------------------------------------------------------- kernels

namespace kernels {

void apply_1q(std::span<cplx> a, int q, const Mat2& m) {
  const std::size_t half = a.size() / 2;
  const std::size_t stride = std::size_t{1} << q;
  const std::size_t low = stride - 1;
  const cplx m0 = m[0], m1 = m[1], m2 = m[2], m3 = m[3];
  cplx* data = a.data();
#pragma omp parallel for schedule(static) if (a.size() >= kParallelDim)
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i0 = ((k & ~low) << 1) | (k & low);
    const std::size_t i1 = i0 | stride;
    const cplx x0 = data[i0];
    const cplx x1 = data[i1];
    data[i0] = m0 * x0 + m1 * x1;
    data[i1] = m2 * x0 + m3 * x1;
  }
}

void apply_diag_1q(std::span<cplx> a, int q, cplx d0, cplx d1) {
  const std::size_t mask = std::size_t{1} << q;
  cplx* data = a.data();
  const std::size_t n = a.size();
#pragma omp parallel for schedule(static) if (n >= kParallelDim)
  for (std::size_t i = 0; i < n; ++i) data[i] *= (i & mask) ? d1 : d0;
}

void apply_2q(std::span<cplx> a, int j, int k, const Mat4& m) {
  const int lo = std::min(j, k);
  const int hi = std::max(j, k);
  const std::size_t bj = std::size_t{1} << j;
  const std::size_t bk = std::size_t{1} << k;
  const std::size_t quarter = a.size() / 4;
  cplx* data = a.data();
#pragma omp parallel for schedule(static) if (a.size() >= kParallelDim)
  for (std::size_t t = 0; t < quarter; ++t) {
    // Insert zero bits at positions lo and hi.
    std::size_t base = t;
    base = ((base >> lo) << (lo + 1)) | (base & ((std::size_t{1} << lo) - 1));
    base = ((base >> hi) << (hi + 1)) | (base & ((std::size_t{1} << hi) - 1));
    const std::size_t idx[4] = {base, base | bk, base | bj, base | bj | bk};
    const cplx x[4] = {data[idx[0]], data[idx[1]], data[idx[2]], data[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      data[idx[r]] = m[4 * r] * x[0] + m[4 * r + 1] * x[1] + m[4 * r + 2] * x[2] +
                     m[4 * r + 3] * x[3];
    }
  }
}

void apply_diag_2q(std::span<cplx> a, int j, int k, const std::array<cplx, 4>& d) {
  const std::size_t bj = std::size_t{1} << j;
  const std::size_t bk = std::size_t{1} << k;
  cplx* data = a.data();
  const std::size_t n = a.size();
#pragma omp parallel for schedule(static) if (n >= kParallelDim)
  for (std::size_t i = 0; i < n; ++i) {
    const int local = ((i & bj) ? 2 : 0) + ((i & bk) ? 1 : 0);
    data[i] *= d[static_cast<std::size_t>(local)];
  }
}

}  // namespace kernels

// ---------------------------------------------------------------- operations

StateVector init_fock(const SpinPattern& pattern) {
  StateVector s(pattern.size());
  s[0] = 0.0;
  s[pattern.index()] = 1.0;
  return s;
}

StateVector ghz_state(const SpinPattern& pattern, double Phi) {
  StateVector s(pattern.size());
  const double r = 1.0 / std::sqrt(2.0);
  s[0] = 0.0;
  s[pattern.index()] += r;
  s[pattern.complement().index()] += r * std::exp(cplx{0.0, -Phi});
  return s;
}

void apply_u3(StateVector& state, int qubit, const GateU3& g) {
  apply_1q(state, qubit, g.matrix());
}

void apply_1q(StateVector& state, int qubit, const Mat2& m) {
  check_qubit(state.n_qubits(), qubit);
  if (m[1] == 0.0 && m[2] == 0.0) {
    kernels::apply_diag_1q(state.amps(), qubit, m[0], m[3]);
  } else {
    kernels::apply_1q(state.amps(), qubit, m);
  }
}

void apply_two_qubit(StateVector& state, int j, int k, const GateTwoQubit& g) {
  check_qubit(state.n_qubits(), j);
  check_qubit(state.n_qubits(), k);
  if (j == k) throw std::invalid_argument("two-qubit gate needs distinct qubits");
  const Mat4 m = g.matrix();
  if (g.diagonal()) {
    kernels::apply_diag_2q(state.amps(), j, k, {m[0], m[5], m[10], m[15]});
  } else {
    kernels::apply_2q(state.amps(), j, k, m);
  }
}

cplx overlap(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("dimension mismatch in overlap");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

std::vector<double> basis_probabilities(const StateVector& state) {
  std::vector<double> p(state.dim());
  for (std::size_t i = 0; i < state.dim(); ++i) p[i] = std::norm(state[i]);
  return p;
}

double expect_z(const StateVector& state, int qubit) {
  check_qubit(state.n_qubits(), qubit);
  const std::size_t mask = std::size_t{1} << qubit;
  double s = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    s += (i & mask) ? -std::norm(state[i]) : std::norm(state[i]);
  }
  return s;
}

// ---------------------------------------------------------------- sparse

SparseState::SparseState(int n_qubits, std::uint64_t index) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 64) throw std::invalid_argument("sparse state needs 1..64 qubits");
  if (n_qubits < 64 && (index >> n_qubits) != 0) throw std::out_of_range("basis index out of range");
  amps_.emplace(index, cplx{1.0, 0.0});
}

cplx SparseState::amplitude(std::uint64_t index) const {
  auto it = amps_.find(index);
  return it == amps_.end() ? cplx{0.0, 0.0} : it->second;
}

double SparseState::norm2() const {
  double s = 0.0;
  for (const auto& [i, a] : amps_) s += std::norm(a);
  return s;
}

void SparseState::apply_1q(int q, const Mat2& m) {
  check_qubit(n_, q);
  const std::uint64_t bit = std::uint64_t{1} << q;
  std::unordered_map<std::uint64_t, cplx> out;
  out.reserve(amps_.size() * 2);
  for (const auto& [i, a] : amps_) {
    const int b = (i & bit) ? 1 : 0;
    out[i & ~bit] += m[static_cast<std::size_t>(b)] * a;
    out[i | bit] += m[static_cast<std::size_t>(2 + b)] * a;
  }
  std::erase_if(out, [&](const auto& kv) { return std::abs(kv.second) < prune; });
  amps_ = std::move(out);
}

void SparseState::apply_2q(int j, int k, const Mat4& m) {
  check_qubit(n_, j);
  check_qubit(n_, k);
  if (j == k) throw std::invalid_argument("two-qubit gate needs distinct qubits");
  const std::uint64_t bj = std::uint64_t{1} << j;
  const std::uint64_t bk = std::uint64_t{1} << k;
  std::unordered_map<std::uint64_t, cplx> out;
  out.reserve(amps_.size() * 2);
  for (const auto& [i, a] : amps_) {
    const int in = ((i & bj) ? 2 : 0) + ((i & bk) ? 1 : 0);
    const std::uint64_t base = i & ~bj & ~bk;
    for (int o = 0; o < 4; ++o) {
      const cplx v = m[static_cast<std::size_t>(o * 4 + in)];
      if (v == cplx{0.0, 0.0}) continue;
      out[base | ((o & 2) ? bj : 0) | ((o & 1) ? bk : 0)] += v * a;
    }
  }
  std::erase_if(out, [&](const auto& kv) { return std::abs(kv.second) < prune; });
  amps_ = std::move(out);
}

}  // namespace catdtc
