#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace catdtc {

using cplx = std::complex<double>;

// Row-major 2x2 and 4x4 complex matrices.
using Mat2 = std::array<cplx, 4>;
using Mat4 = std::array<cplx, 16>;

inline constexpr double kPi = 3.14159265358979323846;

// Bit string over N qubits. Character i of the text form is qubit i, and
// qubit i is bit i of the basis index.
class SpinPattern {
 public:
  SpinPattern() = default;
  explicit SpinPattern(std::vector<std::uint8_t> bits);

  static SpinPattern from_string(std::string_view text);
  static SpinPattern from_index(std::uint64_t index, int n);
  static SpinPattern uniform(int n, int bit);
  // 0101... when first == 0.
  static SpinPattern neel(int n, int first = 0);

  int size() const { return static_cast<int>(bits_.size()); }
  int operator[](int j) const { return bits_[static_cast<std::size_t>(j)]; }
  void set(int j, int bit);
  void flip(int j);

  SpinPattern complement() const;
  // Flips every odd site.
  SpinPattern staggered() const;
  std::uint64_t index() const;
  std::string str() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const SpinPattern&, const SpinPattern&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

class StateVector {
 public:
  StateVector() = default;
  // |0...0>.
  explicit StateVector(int n_qubits);

  int n_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<cplx> amps() { return amps_; }
  std::span<const cplx> amps() const { return amps_; }
  cplx& operator[](std::size_t i) { return amps_[i]; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  double norm2() const;
  void normalize();

 private:
  int n_ = 0;
  std::vector<cplx> amps_;
};

struct GateU3 {
  double alpha = 0.0;
  double beta = 0.0;
  double theta = 0.0;

  Mat2 matrix() const;
  // Exact inverse within the U3 family: U3(a, b - t + pi, -t).
  GateU3 inverse() const;
};

// Decomposes a 2x2 unitary as phase * U3(alpha, beta, theta).
GateU3 decompose_u3(const Mat2& m, cplx* global_phase = nullptr);

enum class TwoQubitKind { CPhase, ZZ, FSim, CZ, CNOT };

// Matrix ordering is |b_j b_k> with b_j the high bit, so CNOT(j, k) has j as
// control.
struct GateTwoQubit {
  TwoQubitKind kind = TwoQubitKind::CZ;
  double phi = 0.0;
  double theta = 0.0;
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  double delta_minus_off = 0.0;

  static GateTwoQubit cphase(double phi);
  static GateTwoQubit zz(double phi);
  static GateTwoQubit fsim(double theta, double phi, double dplus,
                           double dminus, double dminus_off);
  static GateTwoQubit cz();
  static GateTwoQubit cnot();

  Mat4 matrix() const;
  bool diagonal() const;
  GateTwoQubit inverse() const;
};

namespace gates {
Mat2 identity();
Mat2 hadamard();
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
// e^{-i theta sigma_x / 2}; X(pi) = -i sigma_x.
Mat2 x_rotation(double theta);
Mat2 y_rotation(double theta);
// diag(1, e^{i theta}).
Mat2 z_phase(double theta);
// e^{-i theta sigma_z / 2}.
Mat2 z_rotation(double theta);
Mat2 multiply(const Mat2& a, const Mat2& b);
Mat2 adjoint(const Mat2& a);
Mat4 multiply(const Mat4& a, const Mat4& b);
// Max elementwise distance after removing the relative global phase.
double distance_up_to_phase(const Mat2& a, const Mat2& b);
}  // namespace gates

// Raw kernels on a span of 2^n amplitudes; qubit q is bit q of the index.
namespace kernels {
void apply_1q(std::span<cplx> a, int q, const Mat2& m);
void apply_diag_1q(std::span<cplx> a, int q, cplx d0, cplx d1);
void apply_2q(std::span<cplx> a, int j, int k, const Mat4& m);
void apply_diag_2q(std::span<cplx> a, int j, int k, const std::array<cplx, 4>& d);
}  // namespace kernels

// Hash-map state for circuits whose support stays small, so N can go up to
// 64. Amplitudes below `prune` in magnitude are dropped after every gate.
class SparseState {
 public:
  explicit SparseState(int n_qubits, std::uint64_t index = 0);

  int n_qubits() const { return n_; }
  std::size_t support() const { return amps_.size(); }
  cplx amplitude(std::uint64_t index) const;
  double norm2() const;
  const std::unordered_map<std::uint64_t, cplx>& amps() const { return amps_; }

  void apply_1q(int q, const Mat2& m);
  void apply_2q(int j, int k, const Mat4& m);

  double prune = 1e-14;

 private:
  int n_ = 0;
  std::unordered_map<std::uint64_t, cplx> amps_;
};

StateVector init_fock(const SpinPattern& pattern);
// (|s> + e^{-i Phi}|s_bar>)/sqrt(2).
StateVector ghz_state(const SpinPattern& pattern, double Phi = 0.0);

void apply_u3(StateVector& state, int qubit, const GateU3& g);
void apply_1q(StateVector& state, int qubit, const Mat2& m);
void apply_two_qubit(StateVector& state, int j, int k, const GateTwoQubit& g);

cplx overlap(const StateVector& a, const StateVector& b);
std::vector<double> basis_probabilities(const StateVector& state);
double expect_z(const StateVector& state, int qubit);

}  // namespace catdtc
