#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "catdtc/circuit.hpp"

namespace catdtc {

// ---------------------------------------------------------------- Layout2D

Layout2D::Layout2D(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("layout needs positive dimensions");
  active_.assign(static_cast<std::size_t>(rows * cols), false);
}

Layout2D Layout2D::full(int rows, int cols) {
  Layout2D l(rows, cols);
  l.active_.assign(l.active_.size(), true);
  return l;
}

Layout2D Layout2D::from_mask(const std::vector<std::string>& mask) {
  if (mask.empty()) throw std::invalid_argument("empty layout mask");
  const int cols = static_cast<int>(mask.front().size());
  Layout2D l(static_cast<int>(mask.size()), cols);
  for (int r = 0; r < l.rows_; ++r) {
    if (static_cast<int>(mask[static_cast<std::size_t>(r)].size()) != cols) {
      throw std::invalid_argument("layout mask rows differ in length");
    }
    for (int c = 0; c < cols; ++c) {
      const char ch = mask[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (ch != '#' && ch != '.') throw std::invalid_argument("layout mask uses '#' and '.'");
      l.set_active({r, c}, ch == '#');
    }
  }
  return l;
}

bool Layout2D::active(Site s) const {
  if (s.row < 0 || s.row >= rows_ || s.col < 0 || s.col >= cols_) return false;
  return active_[static_cast<std::size_t>(s.row * cols_ + s.col)];
}

void Layout2D::set_active(Site s, bool on) {
  if (s.row < 0 || s.row >= rows_ || s.col < 0 || s.col >= cols_) {
    throw std::out_of_range("site outside layout");
  }
  active_[static_cast<std::size_t>(s.row * cols_ + s.col)] = on;
}

std::vector<Site> Layout2D::sites() const {
  std::vector<Site> out;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (active({r, c})) out.push_back({r, c});
  return out;
}

std::vector<std::pair<Site, Site>> Layout2D::couplers() const {
  std::vector<std::pair<Site, Site>> out;
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (!active({r, c})) continue;
      if (active({r, c + 1})) out.push_back({{r, c}, {r, c + 1}});
      if (active({r + 1, c})) out.push_back({{r, c}, {r + 1, c}});
    }
  }
  return out;
}

bool Layout2D::coupled(Site a, Site b) const {
  if (!active(a) || !active(b)) return false;
  return std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1;
}

// ---------------------------------------------------------------- generator

namespace {

std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int src) {
  std::vector<int> d(adj.size(), INT_MAX);
  std::queue<int> q;
  d[static_cast<std::size_t>(src)] = 0;
  q.push(src);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (d[static_cast<std::size_t>(v)] == INT_MAX) {
        d[static_cast<std::size_t>(v)] = d[static_cast<std::size_t>(u)] + 1;
        q.push(v);
      }
    }
  }
  return d;
}

}  // namespace

GhzPlan generate_ghz_circuit(const Layout2D& layout, const std::vector<Site>& targets,
                             const SpinPattern& pattern) {
  const int n = static_cast<int>(targets.size());
  if (n == 0) throw std::invalid_argument("GHZ generator needs at least one target");
  if (pattern.size() != n) {
    throw std::invalid_argument("pattern length " + std::to_string(pattern.size()) +
                                " does not match " + std::to_string(n) + " targets");
  }
  std::map<Site, int> index;
  for (int i = 0; i < n; ++i) {
    const Site s = targets[static_cast<std::size_t>(i)];
    if (!layout.active(s)) throw std::invalid_argument("target site is not active");
    if (!index.emplace(s, i).second) throw std::invalid_argument("duplicate target site");
  }

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Site s = targets[static_cast<std::size_t>(i)];
    for (const Site t : {Site{s.row - 1, s.col}, Site{s.row + 1, s.col}, Site{s.row, s.col - 1},
                         Site{s.row, s.col + 1}}) {
      auto it = index.find(t);
      if (it != index.end() && layout.coupled(s, t)) adj[static_cast<std::size_t>(i)].push_back(it->second);
    }
  }

  std::vector<std::vector<int>> dist(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) dist[static_cast<std::size_t>(i)] = bfs(adj, i);
  for (int v = 0; v < n; ++v) {
    if (dist[0][static_cast<std::size_t>(v)] == INT_MAX) {
      throw std::invalid_argument("GHZ targets are not connected in the coupler graph");
    }
  }

  GhzPlan plan;
  plan.qubits = targets;
  plan.parent.assign(static_cast<std::size_t>(n), -1);
  plan.layer_of.assign(static_cast<std::size_t>(n), 0);
  plan.circuit = Circuit(n);

  if (n == 1) {
    plan.circuit.add_layer({Gate::h(0)});
    return plan;
  }

  // Root pair: adjacent pair with the smallest eccentricity, ties to the
  // lexicographically lowest (site, site).
  int best_a = -1, best_b = -1, best_ecc = INT_MAX;
  for (int a = 0; a < n; ++a) {
    for (int b : adj[static_cast<std::size_t>(a)]) {
      const Site sa = targets[static_cast<std::size_t>(a)];
      const Site sb = targets[static_cast<std::size_t>(b)];
      if (!(sa < sb)) continue;
      int ecc = 0;
      for (int v = 0; v < n; ++v) {
        ecc = std::max(ecc, std::min(dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)],
                                     dist[static_cast<std::size_t>(b)][static_cast<std::size_t>(v)]));
      }
      const bool better =
          ecc < best_ecc ||
          (ecc == best_ecc &&
           std::tie(sa, sb) < std::tie(targets[static_cast<std::size_t>(best_a)],
                                       targets[static_cast<std::size_t>(best_b)]));
      if (better) {
        best_a = a;
        best_b = b;
        best_ecc = ecc;
      }
    }
  }
  plan.root = best_a;
  plan.root_partner = best_b;
  plan.eccentricity = best_ecc;

  std::vector<int> radial(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    radial[static_cast<std::size_t>(v)] =
        std::min(dist[static_cast<std::size_t>(best_a)][static_cast<std::size_t>(v)],
                 dist[static_cast<std::size_t>(best_b)][static_cast<std::size_t>(v)]);
  }
  auto key = [&](int v) {
    const Site s = targets[static_cast<std::size_t>(v)];
    return std::make_tuple(radial[static_cast<std::size_t>(v)], s.row, s.col);
  };
  auto by_key = [&](int u, int v) { return key(u) < key(v); };

  std::vector<bool> entangled(static_cast<std::size_t>(n), false);
  entangled[static_cast<std::size_t>(best_a)] = entangled[static_cast<std::size_t>(best_b)] = true;
  plan.parent[static_cast<std::size_t>(best_b)] = best_a;
  plan.layer_of[static_cast<std::size_t>(best_b)] = 1;
  std::vector<Layer> cnot_layers{{Gate::cnot(best_a, best_b)}};
  int remaining = n - 2;

  // Each further layer is a maximum matching between entangled qubits and
  // their unentangled neighbours (Kuhn augmenting paths in radial order).
  while (remaining > 0) {
    std::vector<int> sources;
    for (int v = 0; v < n; ++v)
      if (entangled[static_cast<std::size_t>(v)]) sources.push_back(v);
    std::sort(sources.begin(), sources.end(), by_key);

    std::vector<std::vector<int>> cand(static_cast<std::size_t>(n));
    for (int u : sources) {
      auto& c = cand[static_cast<std::size_t>(u)];
      for (int v : adj[static_cast<std::size_t>(u)])
        if (!entangled[static_cast<std::size_t>(v)]) c.push_back(v);
      std::sort(c.begin(), c.end(), by_key);
    }

    std::vector<int> match(static_cast<std::size_t>(n), -1);
    std::vector<bool> seen;
    std::function<bool(int)> augment = [&](int u) {
      for (int v : cand[static_cast<std::size_t>(u)]) {
        if (seen[static_cast<std::size_t>(v)]) continue;
        seen[static_cast<std::size_t>(v)] = true;
        if (match[static_cast<std::size_t>(v)] < 0 || augment(match[static_cast<std::size_t>(v)])) {
          match[static_cast<std::size_t>(v)] = u;
          return true;
        }
      }
      return false;
    };
    for (int u : sources) {
      seen.assign(static_cast<std::size_t>(n), false);
      augment(u);
    }

    Layer layer;
    const int layer_no = static_cast<int>(cnot_layers.size()) + 1;
    for (int u : sources) {
      for (int v = 0; v < n; ++v) {
        if (match[static_cast<std::size_t>(v)] != u) continue;
        layer.push_back(Gate::cnot(u, v));
        plan.parent[static_cast<std::size_t>(v)] = u;
        plan.layer_of[static_cast<std::size_t>(v)] = layer_no;
      }
    }
    if (layer.empty()) throw std::logic_error("GHZ scheduler made no progress");
    for (const Gate& g : layer) entangled[static_cast<std::size_t>(g.q1)] = true;
    remaining -= static_cast<int>(layer.size());
    cnot_layers.push_back(std::move(layer));
  }

  // X flags: child value = flag xor parent value, so flag_c = s_c xor s_parent.
  Layer first{Gate::h(best_a)};
  for (int v = 0; v < n; ++v) {
    const int p = plan.parent[static_cast<std::size_t>(v)];
    if (p >= 0 && (pattern[v] ^ pattern[p])) first.push_back(Gate::x(v, kPi));
  }
  plan.circuit.add_layer(std::move(first));
  for (auto& l : cnot_layers) plan.circuit.add_layer(std::move(l));
  plan.cnot_layers = static_cast<int>(cnot_layers.size());
  return plan;
}

GhzPlan generate_ghz_circuit(const Layout2D& layout, const SpinPattern& pattern) {
  return generate_ghz_circuit(layout, layout.sites(), pattern);
}

}  // namespace catdtc
