#include <stdexcept>

#include "catdtc/circuit.hpp"

namespace catdtc {

FloquetSpec FloquetSpec::uniform(int n, double lambda1, double lambda2, double phi1,
                                 double phi2) {
  FloquetSpec s;
  s.n = n;
  s.lambda1 = lambda1;
  s.lambda2 = lambda2;
  s.phi1 = phi1;
  s.phi2 = phi2;
  s.j_signs.assign(static_cast<std::size_t>(n), 1);
  s.x_flags.assign(static_cast<std::size_t>(n), 1);
  return s;
}

FloquetSpec FloquetSpec::experiment(int n, double lambda) {
  return uniform(n, lambda, lambda, -kPi / 2.0, kPi / 2.0 - 0.6);
}

double FloquetSpec::coupling(int bond) const {
  const auto b = static_cast<std::size_t>(bond);
  const double scale = bond_scale.empty() ? 1.0 : bond_scale.at(b);
  return J * j_signs.at(b) * scale;
}

void FloquetSpec::validate() const {
  if (n < 2) throw std::invalid_argument("Floquet ring needs at least 2 qubits");
  const auto un = static_cast<std::size_t>(n);
  if (j_signs.size() != un) throw std::invalid_argument("j_signs must have one entry per bond");
  if (x_flags.size() != un) throw std::invalid_argument("x_flags must have one entry per qubit");
  if (!bond_scale.empty() && bond_scale.size() != un) {
    throw std::invalid_argument("bond_scale must be empty or one entry per bond");
  }
  for (int s : j_signs)
    if (s != 1 && s != -1) throw std::invalid_argument("j_signs entries must be +1 or -1");
  for (auto x : x_flags)
    if (x > 1) throw std::invalid_argument("x_flags entries must be 0 or 1");
  if (!(T > 0.0)) throw std::invalid_argument("period T must be positive");
}

FloquetSpec edit_pattern(const FloquetSpec& spec, const SpinPattern& target) {
  if (target.size() != spec.n) throw std::invalid_argument("target pattern length must equal N");
  FloquetSpec out = spec;
  const int n = spec.n;
  out.x_flags.assign(target.bits().begin(), target.bits().end());
  out.j_signs.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    out.j_signs[static_cast<std::size_t>(j)] = (2 * target[j] - 1) * (2 * target[(j + 1) % n] - 1);
  }
  return out;
}

Mat2 floquet_pre_matrix(const FloquetSpec& spec) {
  using namespace gates;
  // R^dag * U_P * X(pi), U_P = e^{-i phi1 Z/2} e^{i lambda1 Y/2} e^{-i phi2 Z/2}.
  const Mat2 up = multiply(z_rotation(spec.phi1),
                           multiply(y_rotation(-spec.lambda1), z_rotation(spec.phi2)));
  return multiply(adjoint(y_rotation(spec.lambda2)), multiply(up, x_rotation(kPi)));
}

Mat2 floquet_post_matrix(const FloquetSpec& spec) { return gates::y_rotation(spec.lambda2); }

Circuit build_floquet_circuit(const FloquetSpec& spec) {
  spec.validate();
  const int n = spec.n;
  if (n % 2 != 0) {
    throw std::invalid_argument("two-sublattice ZZ scheduling on a ring needs even N");
  }
  Circuit c(n);

  const GateU3 pre = decompose_u3(floquet_pre_matrix(spec));
  Layer l0;
  for (int q = 0; q < n; ++q) l0.push_back(Gate::u3(q, pre));
  c.add_layer(std::move(l0));

  Layer sandwich;
  for (int q = 0; q < n; ++q)
    if (spec.x_flags[static_cast<std::size_t>(q)] == 0) sandwich.push_back(Gate::x(q, kPi));
  if (!sandwich.empty()) c.add_layer(sandwich);

  for (int parity = 0; parity < 2; ++parity) {
    Layer zz;
    for (int j = parity; j < n; j += 2) {
      const int k = (j + 1) % n;
      const int frame = (2 * spec.x_flags[static_cast<std::size_t>(j)] - 1) *
                        (2 * spec.x_flags[static_cast<std::size_t>(k)] - 1);
      zz.push_back(Gate::zz(j, k, -4.0 * spec.T * spec.coupling(j) * frame));
    }
    c.add_layer(std::move(zz));
  }

  if (!sandwich.empty()) c.add_layer(sandwich);

  // e^{-i lambda2 Y/2} = U3(lambda2, pi/2, 0).
  Layer l5;
  for (int q = 0; q < n; ++q) l5.push_back(Gate::u3(q, GateU3{spec.lambda2, kPi / 2.0, 0.0}));
  c.add_layer(std::move(l5));
  return c;
}

Circuit build_u1_circuit(const FloquetSpec& spec) {
  spec.validate();
  using namespace gates;
  const Mat2 u1 = multiply(
      z_rotation(spec.phi1),
      multiply(y_rotation(-spec.lambda1), multiply(z_rotation(spec.phi2), x_rotation(kPi))));
  const GateU3 g = decompose_u3(u1);
  Circuit c(spec.n);
  Layer l;
  for (int q = 0; q < spec.n; ++q) l.push_back(Gate::u3(q, g));
  c.add_layer(std::move(l));
  return c;
}

}  // namespace catdtc
