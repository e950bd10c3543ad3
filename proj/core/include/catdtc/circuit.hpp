#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catdtc/qstate.hpp"

namespace catdtc {

enum class GateKind { U3, H, X, Z, CZ, CNOT, CPHASE, ZZ, FSIM };

// One gate application. X(q; t) is the rotation e^{-i t sigma_x / 2} and
// Z(q; t) is diag(1, e^{i t}). Two-qubit parameters follow GateTwoQubit.
struct Gate {
  GateKind kind = GateKind::H;
  int q0 = 0;
  int q1 = -1;
  std::array<double, 5> p{};

  static Gate u3(int q, const GateU3& g);
  static Gate h(int q);
  static Gate x(int q, double theta = kPi);
  static Gate z(int q, double theta);
  static Gate cz(int a, int b);
  static Gate cnot(int control, int target);
  static Gate cphase(int a, int b, double phi);
  static Gate zz(int a, int b, double phi);
  static Gate fsim(int a, int b, double theta, double phi, double dplus,
                   double dminus, double dminus_off);

  bool two_qubit() const;
  Mat2 matrix_1q() const;
  GateTwoQubit as_two_qubit() const;
  Gate inverse() const;
};

using Layer = std::vector<Gate>;

struct Circuit {
  int n_qubits = 0;
  std::vector<Layer> layers;

  Circuit() = default;
  explicit Circuit(int n) : n_qubits(n) {}

  // Throws if a qubit is out of range or repeated inside the layer.
  void add_layer(Layer layer);
  void append(const Circuit& other);
  std::size_t depth() const { return layers.size(); }
  std::size_t two_qubit_layers() const;
  std::size_t gate_count() const;
};

void validate_layer(const Layer& layer, int n_qubits);
void apply_gate(StateVector& state, const Gate& g);
void execute(const Circuit& circuit, StateVector& state);
// Throws once the support grows past `max_support`.
void execute(const Circuit& circuit, SparseState& state, std::size_t max_support = std::size_t{1} << 22);
// Gate-by-gate exact inverse, layers reversed.
Circuit inverse(const Circuit& circuit);

// Line-oriented text form: a "qubits N" header then one layer per line,
// gates separated by whitespace, '#' starts a comment.
std::string to_text(const Circuit& circuit);
Circuit parse_circuit(std::string_view text);

// ------------------------------------------------------------------ layouts

struct Site {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Site&, const Site&) = default;
};

class Layout2D {
 public:
  Layout2D(int rows, int cols);
  static Layout2D full(int rows, int cols);
  // Rows of '#' (active) and '.' (inactive).
  static Layout2D from_mask(const std::vector<std::string>& mask);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool active(Site s) const;
  void set_active(Site s, bool on);
  // Active sites in row-major order.
  std::vector<Site> sites() const;
  std::vector<std::pair<Site, Site>> couplers() const;
  bool coupled(Site a, Site b) const;

 private:
  int rows_;
  int cols_;
  std::vector<bool> active_;
};

struct GhzPlan {
  Circuit circuit;
  std::vector<Site> qubits;  // qubit index -> grid site
  int root = 0;              // receives the Hadamard
  int root_partner = 0;
  std::vector<int> parent;   // -1 for the root
  std::vector<int> layer_of; // CNOT layer that entangles each qubit
  int cnot_layers = 0;
  int eccentricity = 0;      // BFS eccentricity of the root pair
};

// Radial GHZ preparation over `targets` (qubit i is targets[i]). Output on
// |0...0> is (|s> + |s_bar>)/sqrt(2) up to a global phase.
GhzPlan generate_ghz_circuit(const Layout2D& layout, const std::vector<Site>& targets,
                             const SpinPattern& pattern);
// All active sites in row-major order.
GhzPlan generate_ghz_circuit(const Layout2D& layout, const SpinPattern& pattern);

// Rewrites {H, X, Z, U3, CNOT, CZ} into alternating merged-U3 and CZ layers.
Circuit compile(const Circuit& circuit);

// Replaces each ZZ(phi) by CPHASE(phi) followed by Z(-phi/2) on both qubits.
Circuit lower_zz(const Circuit& circuit);

// ------------------------------------------------------------------ Floquet

// U_F = U2 U1 on a periodic ring.
//   U1 = prod_j e^{-i phi1 Z/2} e^{i lambda1 Y/2} e^{-i phi2 Z/2} e^{-i pi X/2}
//   U2 = R D R^dag, R = prod_j e^{-i lambda2 Y/2},
//   D  = exp(-i T sum_j J_j Z_j Z_{j+1}),  J_j = J * j_signs[j] * bond_scale[j].
struct FloquetSpec {
  int n = 0;
  double J = 1.0;
  double T = 1.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  std::vector<int> j_signs;            // +-1 per bond
  std::vector<std::uint8_t> x_flags;   // 0 -> X(pi) pair around the ZZ gates
  std::vector<double> bond_scale;      // empty means all ones

  static FloquetSpec uniform(int n, double lambda1, double lambda2, double phi1,
                             double phi2);
  // J = T = 1, lambda1 = lambda2 = lambda, phi1 = -pi/2, phi2 = pi/2 - 0.6.
  static FloquetSpec experiment(int n, double lambda);

  double coupling(int bond) const;
  void validate() const;
};

// x_flags <- target bits, j_signs[j] = (2x_j - 1)(2x_{j+1} - 1).
FloquetSpec edit_pattern(const FloquetSpec& spec, const SpinPattern& target);

// One driving cycle: U3 layer, X(pi) sandwich, even and odd ZZ layers, U3'.
Circuit build_floquet_circuit(const FloquetSpec& spec);

// Single-site factors of U_F in application order: before D and after D.
Mat2 floquet_pre_matrix(const FloquetSpec& spec);
Mat2 floquet_post_matrix(const FloquetSpec& spec);

// U1 alone as a circuit (one U3 layer).
Circuit build_u1_circuit(const FloquetSpec& spec);

}  // namespace catdtc
