#include "catdtc/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace catdtc {

// ---------------------------------------------------------------- Gate

Gate Gate::u3(int q, const GateU3& g) {
  Gate out;
  out.kind = GateKind::U3;
  out.q0 = q;
  out.p = {g.alpha, g.beta, g.theta, 0.0, 0.0};
  return out;
}

Gate Gate::h(int q) {
  Gate out;
  out.kind = GateKind::H;
  out.q0 = q;
  return out;
}

Gate Gate::x(int q, double theta) {
  Gate out;
  out.kind = GateKind::X;
  out.q0 = q;
  out.p[0] = theta;
  return out;
}

Gate Gate::z(int q, double theta) {
  Gate out;
  out.kind = GateKind::Z;
  out.q0 = q;
  out.p[0] = theta;
  return out;
}

namespace {

Gate two(GateKind kind, int a, int b) {
  Gate out;
  out.kind = kind;
  out.q0 = a;
  out.q1 = b;
  return out;
}

}  // namespace

Gate Gate::cz(int a, int b) { return two(GateKind::CZ, a, b); }
Gate Gate::cnot(int control, int target) { return two(GateKind::CNOT, control, target); }

Gate Gate::cphase(int a, int b, double phi) {
  Gate out = two(GateKind::CPHASE, a, b);
  out.p[0] = phi;
  return out;
}

Gate Gate::zz(int a, int b, double phi) {
  Gate out = two(GateKind::ZZ, a, b);
  out.p[0] = phi;
  return out;
}

Gate Gate::fsim(int a, int b, double theta, double phi, double dplus, double dminus,
                double dminus_off) {
  Gate out = two(GateKind::FSIM, a, b);
  out.p = {theta, phi, dplus, dminus, dminus_off};
  return out;
}

bool Gate::two_qubit() const {
  switch (kind) {
    case GateKind::CZ:
    case GateKind::CNOT:
    case GateKind::CPHASE:
    case GateKind::ZZ:
    case GateKind::FSIM:
      return true;
    default:
      return false;
  }
}

Mat2 Gate::matrix_1q() const {
  switch (kind) {
    case GateKind::U3:
      return GateU3{p[0], p[1], p[2]}.matrix();
    case GateKind::H:
      return gates::hadamard();
    case GateKind::X:
      return gates::x_rotation(p[0]);
    case GateKind::Z:
      return gates::z_phase(p[0]);
    default:
      throw std::logic_error("matrix_1q called on a two-qubit gate");
  }
}

GateTwoQubit Gate::as_two_qubit() const {
  switch (kind) {
    case GateKind::CZ:
      return GateTwoQubit::cz();
    case GateKind::CNOT:
      return GateTwoQubit::cnot();
    case GateKind::CPHASE:
      return GateTwoQubit::cphase(p[0]);
    case GateKind::ZZ:
      return GateTwoQubit::zz(p[0]);
    case GateKind::FSIM:
      return GateTwoQubit::fsim(p[0], p[1], p[2], p[3], p[4]);
    default:
      throw std::logic_error("as_two_qubit called on a single-qubit gate");
  }
}

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::U3: {
      const GateU3 inv = GateU3{p[0], p[1], p[2]}.inverse();
      g.p = {inv.alpha, inv.beta, inv.theta, 0.0, 0.0};
      break;
    }
    case GateKind::X:
    case GateKind::Z:
    case GateKind::CPHASE:
    case GateKind::ZZ:
      g.p[0] = -p[0];
      break;
    case GateKind::FSIM: {
      const GateTwoQubit inv = as_two_qubit().inverse();
      g.p = {inv.theta, inv.phi, inv.delta_plus, inv.delta_minus, inv.delta_minus_off};
      break;
    }
    case GateKind::H:
    case GateKind::CZ:
    case GateKind::CNOT:
      break;
  }
  return g;
}

// ---------------------------------------------------------------- Circuit

void validate_layer(const Layer& layer, int n_qubits) {
  std::vector<bool> used(static_cast<std::size_t>(std::max(n_qubits, 0)), false);
  auto claim = [&](int q) {
    if (q < 0 || q >= n_qubits) {
      throw std::out_of_range("gate qubit " + std::to_string(q) + " outside circuit of " +
                              std::to_string(n_qubits) + " qubits");
    }
    if (used[static_cast<std::size_t>(q)]) {
      throw std::invalid_argument("qubit " + std::to_string(q) + " appears twice in a layer");
    }
    used[static_cast<std::size_t>(q)] = true;
  };
  for (const Gate& g : layer) {
    claim(g.q0);
    if (g.two_qubit()) claim(g.q1);
  }
}

void Circuit::add_layer(Layer layer) {
  validate_layer(layer, n_qubits);
  layers.push_back(std::move(layer));
}

void Circuit::append(const Circuit& other) {
  if (other.n_qubits != n_qubits) throw std::invalid_argument("append: qubit count mismatch");
  layers.insert(layers.end(), other.layers.begin(), other.layers.end());
}

std::size_t Circuit::two_qubit_layers() const {
  return static_cast<std::size_t>(std::count_if(layers.begin(), layers.end(), [](const Layer& l) {
    return std::any_of(l.begin(), l.end(), [](const Gate& g) { return g.two_qubit(); });
  }));
}

std::size_t Circuit::gate_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.size();
  return n;
}

void apply_gate(StateVector& state, const Gate& g) {
  if (g.two_qubit()) {
    apply_two_qubit(state, g.q0, g.q1, g.as_two_qubit());
  } else {
    apply_1q(state, g.q0, g.matrix_1q());
  }
}

void execute(const Circuit& circuit, StateVector& state) {
  if (state.n_qubits() != circuit.n_qubits) {
    throw std::invalid_argument("circuit and state have different qubit counts");
  }
  for (const auto& layer : circuit.layers)
    for (const auto& g : layer) apply_gate(state, g);
}

void execute(const Circuit& circuit, SparseState& state, std::size_t max_support) {
  if (state.n_qubits() != circuit.n_qubits) {
    throw std::invalid_argument("circuit and state have different qubit counts");
  }
  for (const auto& layer : circuit.layers) {
    for (const auto& g : layer) {
      if (g.two_qubit()) {
        state.apply_2q(g.q0, g.q1, g.as_two_qubit().matrix());
      } else {
        state.apply_1q(g.q0, g.matrix_1q());
      }
      if (state.support() > max_support) {
        throw std::length_error("sparse support exceeded " + std::to_string(max_support));
      }
    }
  }
}

Circuit inverse(const Circuit& circuit) {
  Circuit out(circuit.n_qubits);
  out.layers.reserve(circuit.layers.size());
  for (auto it = circuit.layers.rbegin(); it != circuit.layers.rend(); ++it) {
    Layer l;
    l.reserve(it->size());
    for (auto g = it->rbegin(); g != it->rend(); ++g) l.push_back(g->inverse());
    out.layers.push_back(std::move(l));
  }
  return out;
}

// ---------------------------------------------------------------- text form

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::U3: return "U3";
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::CZ: return "CZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CPHASE: return "CPHASE";
    case GateKind::ZZ: return "ZZ";
    case GateKind::FSIM: return "FSIM";
  }
  return "?";
}

int param_count(GateKind k) {
  switch (k) {
    case GateKind::U3: return 3;
    case GateKind::X:
    case GateKind::Z:
    case GateKind::CPHASE:
    case GateKind::ZZ: return 1;
    case GateKind::FSIM: return 5;
    default: return 0;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

double parse_angle(std::string_view s) {
  s = trim(s);
  double sign = 1.0;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    if (s.front() == '-') sign = -1.0;
    std::string_view rest = trim(s.substr(1));
    if (rest.starts_with("pi")) s = rest;
  }
  if (s.starts_with("pi")) {
    std::string_view tail = trim(s.substr(2));
    double div = 1.0;
    if (!tail.empty()) {
      if (tail.front() != '/') throw std::invalid_argument("bad angle: " + std::string(s));
      div = parse_angle(tail.substr(1));
    }
    return sign * kPi / div;
  }
  // from_chars rejects a leading '+'.
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number: '" + std::string(s) + "'");
  }
  return v;
}

int parse_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad qubit index: '" + std::string(s) + "'");
  }
  return v;
}

Gate parse_gate(std::string_view name, std::string_view args) {
  static const std::pair<const char*, GateKind> kinds[] = {
      {"U3", GateKind::U3},     {"H", GateKind::H},   {"X", GateKind::X},
      {"Z", GateKind::Z},       {"CZ", GateKind::CZ}, {"CNOT", GateKind::CNOT},
      {"CPHASE", GateKind::CPHASE}, {"ZZ", GateKind::ZZ}, {"FSIM", GateKind::FSIM}};
  Gate g;
  bool found = false;
  for (const auto& [n, k] : kinds) {
    if (name == n) {
      g.kind = k;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("unknown gate '" + std::string(name) + "'");

  const auto parts = split(args, ';');
  if (parts.size() > 2) throw std::invalid_argument("too many ';' in gate arguments");
  const auto qubits = split(parts[0], ',');
  const std::size_t want_q = g.two_qubit() ? 2 : 1;
  if (qubits.size() != want_q) {
    throw std::invalid_argument(std::string(name) + " expects " + std::to_string(want_q) +
                                " qubit(s)");
  }
  g.q0 = parse_int(qubits[0]);
  if (want_q == 2) g.q1 = parse_int(qubits[1]);

  const int want_p = param_count(g.kind);
  std::vector<std::string_view> params;
  if (parts.size() == 2) params = split(parts[1], ',');
  if (static_cast<int>(params.size()) != want_p) {
    throw std::invalid_argument(std::string(name) + " expects " + std::to_string(want_p) +
                                " parameter(s)");
  }
  for (int i = 0; i < want_p; ++i) g.p[static_cast<std::size_t>(i)] = parse_angle(params[static_cast<std::size_t>(i)]);
  return g;
}

}  // namespace

std::string to_text(const Circuit& circuit) {
  std::ostringstream os;
  os << "qubits " << circuit.n_qubits << '\n';
  for (const auto& layer : circuit.layers) {
    bool first = true;
    for (const auto& g : layer) {
      if (!first) os << ' ';
      first = false;
      os << kind_name(g.kind) << '(' << g.q0;
      if (g.two_qubit()) os << ',' << g.q1;
      const int np = param_count(g.kind);
      for (int i = 0; i < np; ++i) os << (i == 0 ? "; " : ",") << num(g.p[static_cast<std::size_t>(i)]);
      os << ')';
    }
    os << '\n';
  }
  return os.str();
}

Circuit parse_circuit(std::string_view text) {
  Circuit c;
  bool have_header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    try {
      if (!have_header) {
        if (line.empty()) continue;
        if (!line.starts_with("qubits")) throw std::invalid_argument("missing 'qubits N' header");
        c.n_qubits = parse_int(line.substr(6));
        if (c.n_qubits < 1) throw std::invalid_argument("qubit count must be positive");
        have_header = true;
        continue;
      }
      Layer layer;
      std::size_t pos = 0;
      while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos >= line.size()) break;
        const std::size_t open = line.find('(', pos);
        const std::size_t close = line.find(')', pos);
        if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
          throw std::invalid_argument("expected NAME(args)");
        }
        layer.push_back(parse_gate(trim(line.substr(pos, open - pos)),
                                   line.substr(open + 1, close - open - 1)));
        pos = close + 1;
      }
      // Lines without gates are skipped.
      if (!layer.empty()) c.add_layer(std::move(layer));
    } catch (const std::exception& e) {
      throw std::invalid_argument("circuit text line " + std::to_string(line_no) + ": " +
                                  e.what());
    }
  }
  if (!have_header) throw std::invalid_argument("circuit text is empty");
  return c;
}

// ---------------------------------------------------------------- compile

Circuit compile(const Circuit& circuit) {
  const int n = circuit.n_qubits;
  Circuit out(n);
  std::vector<Mat2> pending(static_cast<std::size_t>(n), gates::identity());
  std::vector<bool> has(static_cast<std::size_t>(n), false);

  auto push = [&](int q, const Mat2& m) {
    auto& p = pending[static_cast<std::size_t>(q)];
    p = gates::multiply(m, p);
    has[static_cast<std::size_t>(q)] = true;
  };
  auto flush = [&](const std::vector<int>& qubits) {
    Layer l;
    for (int q : qubits) {
      if (!has[static_cast<std::size_t>(q)]) continue;
      l.push_back(Gate::u3(q, decompose_u3(pending[static_cast<std::size_t>(q)])));
      pending[static_cast<std::size_t>(q)] = gates::identity();
      has[static_cast<std::size_t>(q)] = false;
    }
    if (!l.empty()) out.add_layer(std::move(l));
  };

  for (const auto& layer : circuit.layers) {
    std::vector<int> involved;
    Layer cz;
    std::vector<int> targets;
    for (const Gate& g : layer) {
      switch (g.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Z:
        case GateKind::U3:
          push(g.q0, g.matrix_1q());
          break;
        case GateKind::CNOT:
          push(g.q1, gates::hadamard());
          targets.push_back(g.q1);
          [[fallthrough]];
        case GateKind::CZ:
          involved.push_back(g.q0);
          involved.push_back(g.q1);
          cz.push_back(Gate::cz(g.q0, g.q1));
          break;
        default:
          throw std::invalid_argument(std::string("compile: unsupported gate ") +
                                      kind_name(g.kind));
      }
    }
    if (cz.empty()) continue;
    // A single-qubit layer is needed anyway once an involved qubit has
    // pending work, so flush everything then; this keeps states sparse.
    const bool needed = std::any_of(involved.begin(), involved.end(),
                                    [&](int q) { return has[static_cast<std::size_t>(q)]; });
    if (needed) {
      std::vector<int> all(static_cast<std::size_t>(n));
      for (int q = 0; q < n; ++q) all[static_cast<std::size_t>(q)] = q;
      flush(all);
    }
    out.add_layer(std::move(cz));
    for (int t : targets) push(t, gates::hadamard());
  }
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) all[static_cast<std::size_t>(q)] = q;
  flush(all);
  return out;
}

Circuit lower_zz(const Circuit& circuit) {
  Circuit out(circuit.n_qubits);
  for (const auto& layer : circuit.layers) {
    Layer main;
    Layer phases;
    for (const Gate& g : layer) {
      if (g.kind == GateKind::ZZ) {
        main.push_back(Gate::cphase(g.q0, g.q1, g.p[0]));
        phases.push_back(Gate::z(g.q0, -g.p[0] / 2.0));
        phases.push_back(Gate::z(g.q1, -g.p[0] / 2.0));
      } else {
        main.push_back(g);
      }
    }
    out.add_layer(std::move(main));
    if (!phases.empty()) out.add_layer(std::move(phases));
  }
  return out;
}

}  // namespace catdtc
