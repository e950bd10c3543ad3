#include "catdtc/spectral.hpp"

#include <cblas.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "catdtc/rng.hpp"

namespace catdtc {

// ------------------------------------------------------------- the matrix

double FloquetMatrix::unitarity_error() const {
  std::vector<cplx> p(dim * dim);
  const cplx one{1.0, 0.0}, zero{0.0, 0.0};
  const auto n = static_cast<blasint>(dim);
  cblas_zgemm(CblasColMajor, CblasConjTrans, CblasNoTrans, n, n, n, &one, data.data(), n,
              data.data(), n, &zero, p.data(), n);
  double err = 0.0;
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r)
      err = std::max(err, std::abs(p[r + c * dim] - (r == c ? 1.0 : 0.0)));
  return err;
}

std::vector<cplx> FloquetMatrix::apply(std::span<const cplx> v) const {
  if (v.size() != dim) throw std::invalid_argument("vector length does not match matrix");
  std::vector<cplx> out(dim);
  const cplx one{1.0, 0.0}, zero{0.0, 0.0};
  const auto n = static_cast<blasint>(dim);
  cblas_zgemv(CblasColMajor, CblasNoTrans, n, n, &one, data.data(), n, v.data(), 1, &zero,
              out.data(), 1);
  return out;
}

FloquetMatrix build_floquet_matrix(const FloquetSpec& spec, int cap) {
  spec.validate();
  if (cap > kDenseHardCap) cap = kDenseHardCap;
  if (spec.n > cap) {
    throw std::length_error("dense Floquet matrix for N=" + std::to_string(spec.n) +
                            " exceeds the cap of " + std::to_string(cap) + " (needs " +
                            std::to_string((std::size_t{1} << (2 * spec.n)) * 16 >> 20) + " MiB)");
  }
  FloquetMatrix m;
  m.n = spec.n;
  m.dim = std::size_t{1} << spec.n;
  const std::size_t dim = m.dim;
  m.data.assign(dim * dim, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < dim; ++i) m.data[i + i * dim] = 1.0;

  // Column-major storage is a 2N-qubit vector whose low N qubits are the
  // row index, so left multiplication is a gate on qubits 0..N-1.
  const std::span<cplx> all(m.data);
  const Mat2 pre = floquet_pre_matrix(spec);
  for (int q = 0; q < spec.n; ++q) kernels::apply_1q(all, q, pre);

  std::vector<cplx> d(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    double e = 0.0;
    for (int j = 0; j < spec.n; ++j) {
      const int k = (j + 1) % spec.n;
      const int zz = (((r >> j) ^ (r >> k)) & 1u) ? -1 : 1;
      e += spec.coupling(j) * zz;
    }
    d[r] = std::polar(1.0, -spec.T * e);
  }
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) m.data[r + c * dim] *= d[r];

  const Mat2 post = floquet_post_matrix(spec);
  for (int q = 0; q < spec.n; ++q) kernels::apply_1q(all, q, post);
  return m;
}

// ------------------------------------------------------------- eigenstates

double ipr(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& a : v) {
    const double p = std::norm(a);
    s += p * p;
  }
  return s;
}

double edwards_anderson(std::span<const cplx> v, int n) {
  if (n < 2) throw std::invalid_argument("Edwards-Anderson parameter needs N >= 2");
  // C_jk = 1 - 2 P(bit_j != bit_k).
  std::vector<double> differ(static_cast<std::size_t>(n * n), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double p = std::norm(v[i]);
    if (p == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const std::size_t bj = (i >> j) & 1u;
      for (int k = j + 1; k < n; ++k)
        if (bj != ((i >> k) & 1u)) differ[static_cast<std::size_t>(j * n + k)] += p;
    }
  }
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double c = 1.0 - 2.0 * differ[static_cast<std::size_t>(j * n + k)];
      s += 2.0 * c * c;
    }
  }
  return s / (n - 1);
}

std::vector<double> edwards_anderson_all(const SpectrumReport& r) {
  std::vector<double> out(r.dim);
#pragma omp parallel for schedule(static)
  for (std::size_t m = 0; m < r.dim; ++m) out[m] = edwards_anderson(r.vector(m), r.n);
  return out;
}

SpectrumReport diagonalize(const FloquetMatrix& m, bool with_ea) {
  Eigensystem es = diagonalize_unitary(m.data, m.dim);
  SpectrumReport r;
  r.n = m.n;
  r.dim = m.dim;
  r.eigenphases = std::move(es.phases);
  r.eigenvectors = std::move(es.vectors);
  r.max_residual = es.max_residual;
  r.ipr.resize(r.dim);
  for (std::size_t k = 0; k < r.dim; ++k) r.ipr[k] = ipr(r.vector(k));
  if (with_ea) r.ea = edwards_anderson_all(r);
  return r;
}

std::vector<double> pair_overlaps(const SpectrumReport& r, const SpinPattern& s) {
  if (s.size() != r.n) throw std::invalid_argument("pattern length does not match spectrum");
  const std::size_t a = s.index();
  const std::size_t b = s.complement().index();
  std::vector<double> out(r.dim);
  for (std::size_t m = 0; m < r.dim; ++m) {
    const auto v = r.vector(m);
    out[m] = std::norm(v[a]) + std::norm(v[b]);
  }
  return out;
}

std::size_t max_overlap_state(const SpectrumReport& r, const SpinPattern& s) {
  const auto ov = pair_overlaps(r, s);
  const double top = *std::max_element(ov.begin(), ov.end());
  std::size_t best = r.dim;
  for (std::size_t m = 0; m < r.dim; ++m) {
    if (ov[m] < top - 1e-12) continue;
    if (best == r.dim || r.ipr[m] > r.ipr[best]) best = m;
  }
  return best;
}

ScarPair find_scar_pair(const SpectrumReport& r, const SpinPattern& s, double cluster_tol) {
  const auto ov = pair_overlaps(r, s);
  const std::size_t dim = r.dim;
  std::vector<int> cluster(dim, 0);
  int nc = 0;
  for (std::size_t m = 1; m < dim; ++m) {
    if (r.eigenphases[m] - r.eigenphases[m - 1] > cluster_tol) ++nc;
    cluster[m] = nc;
  }
  ++nc;
  // Phases just above -pi and at pi are the same level.
  if (nc > 1 && r.eigenphases.front() + 2.0 * kPi - r.eigenphases.back() <= cluster_tol) {
    const int last = cluster.back();
    for (auto& c : cluster)
      if (c == last) c = 0;
  }
  std::vector<double> weight(static_cast<std::size_t>(nc), 0.0);
  std::vector<std::size_t> lead(static_cast<std::size_t>(nc), dim);
  for (std::size_t m = 0; m < dim; ++m) {
    const auto c = static_cast<std::size_t>(cluster[m]);
    weight[c] += ov[m];
    if (lead[c] == dim || ov[m] > ov[lead[c]]) lead[c] = m;
  }
  std::vector<std::size_t> order(static_cast<std::size_t>(nc));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return weight[a] > weight[b]; });

  ScarPair p;
  p.s = s;
  p.sbar = s.complement();
  const std::size_t c1 = order[0];
  const std::size_t c2 = order.size() > 1 ? order[1] : order[0];
  std::size_t m1 = lead[c1], m2 = lead[c2];
  if (r.eigenphases[m2] < r.eigenphases[m1]) std::swap(m1, m2);
  p.eps_plus = r.eigenphases[m1];
  p.eps_minus = r.eigenphases[m2];
  const double d = std::fmod(std::abs(p.eps_minus - p.eps_plus), 2.0 * kPi);
  p.gap = std::min(d, 2.0 * kPi - d);
  p.ipr_plus = r.ipr[m1];
  p.ipr_minus = r.ipr[m2];
  p.weight = weight[c1] + (c2 != c1 ? weight[c2] : 0.0);
  return p;
}

ScarPatterns scar_patterns(const std::vector<int>& j_signs) {
  const int n = static_cast<int>(j_signs.size());
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("scar patterns need an even ring");
  int prod = 1;
  for (int s : j_signs) {
    if (s != 1 && s != -1) throw std::invalid_argument("j_signs entries must be +1 or -1");
    prod *= s;
  }
  if (prod != 1) {
    throw std::invalid_argument("frustrated ring: product of bond signs is -1, no scar pattern");
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
  for (int j = 0; j + 1 < n; ++j) {
    bits[static_cast<std::size_t>(j + 1)] =
        j_signs[static_cast<std::size_t>(j)] == 1 ? bits[static_cast<std::size_t>(j)]
                                                  : bits[static_cast<std::size_t>(j)] ^ 1u;
  }
  const SpinPattern a(bits);
  const SpinPattern b = a.staggered();
  return {{a, a.complement()}, {b, b.complement()}};
}

// ------------------------------------------------------------- ensembles

namespace {

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

MblScanResult mbl_ensemble_scan(const DisorderEnsemble& ens, const SpinPattern& target,
                                const std::vector<double>& lambdas, const FloquetSpec& base) {
  if (ens.n_samples < 1) throw std::invalid_argument("ensemble needs at least one sample");
  if (target.size() != base.n) throw std::invalid_argument("target length must equal N");
  const int n = base.n;
  MblScanResult res;
  res.n = n;
  res.seed = ens.seed;
  const Rng root(ens.seed);

  std::vector<std::vector<double>> scales(static_cast<std::size_t>(ens.n_samples));
  for (int i = 0; i < ens.n_samples; ++i) {
    Rng r = root.split(static_cast<std::uint64_t>(i));
    auto& s = scales[static_cast<std::size_t>(i)];
    s.resize(static_cast<std::size_t>(n));
    for (auto& x : s) x = ens.W > 0.0 ? r.uniform(ens.J_mean - ens.W / 2.0, ens.J_mean + ens.W / 2.0)
                                      : ens.J_mean;
  }

  for (double lambda : lambdas) {
    std::vector<MblSampleRow> rows(static_cast<std::size_t>(ens.n_samples));
#pragma omp parallel for schedule(dynamic) if (n <= 8)
    for (int i = 0; i < ens.n_samples; ++i) {
      FloquetSpec spec = edit_pattern(base, target);
      spec.J = 1.0;
      spec.lambda1 = spec.lambda2 = lambda;
      spec.bond_scale = scales[static_cast<std::size_t>(i)];
      const SpectrumReport rep = diagonalize(build_floquet_matrix(spec));
      const std::size_t m = max_overlap_state(rep, target);
      MblSampleRow row;
      row.lambda = lambda;
      row.sample = i;
      row.ipr_target = rep.ipr[m];
      row.chi = edwards_anderson(rep.vector(m), n);
      row.gap = find_scar_pair(rep, target).gap;
      rows[static_cast<std::size_t>(i)] = row;
    }
    std::vector<double> iprs;
    for (const auto& r : rows) iprs.push_back(r.ipr_target);
    std::sort(iprs.begin(), iprs.end());
    const std::size_t k = std::max<std::size_t>(1, iprs.size() / 10);
    MblLambdaStats st;
    st.lambda = lambda;
    st.mean = mean_of(iprs);
    st.bottom10 = mean_of({iprs.begin(), iprs.begin() + static_cast<std::ptrdiff_t>(k)});
    st.top10 = mean_of({iprs.end() - static_cast<std::ptrdiff_t>(k), iprs.end()});
    res.stats.push_back(st);
    res.rows.insert(res.rows.end(), rows.begin(), rows.end());
  }
  return res;
}

std::optional<double> curve_crossing(const std::vector<double>& x, const std::vector<double>& a,
                                     const std::vector<double>& b) {
  if (x.size() != a.size() || x.size() != b.size()) {
    throw std::invalid_argument("curve_crossing: length mismatch");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d0 = a[i] - b[i];
    if (d0 == 0.0) return x[i];
    if (i + 1 == x.size()) break;
    const double d1 = a[i + 1] - b[i + 1];
    if (d0 * d1 < 0.0) return x[i] + (x[i + 1] - x[i]) * d0 / (d0 - d1);
  }
  return std::nullopt;
}

EaScanResult ea_crossing_scan(const EaScanConfig& cfg) {
  if (cfg.n_samples < 1) throw std::invalid_argument("EA scan needs at least one sample");
  if (cfg.lambdas.empty() || cfg.sizes.empty()) throw std::invalid_argument("EA scan grid is empty");
  EaScanResult res;
  res.kind = cfg.kind;
  res.lambdas = cfg.lambdas;
  res.sizes = cfg.sizes;
  res.seed = cfg.seed;
  const Rng root(cfg.seed);
  const std::size_t nl = cfg.lambdas.size();

  for (int n : cfg.sizes) {
    if (n > kDenseCap) throw std::length_error("EA scan size exceeds the dense cap");
    std::vector<std::vector<double>> chi(nl, std::vector<double>(static_cast<std::size_t>(cfg.n_samples)));
#pragma omp parallel for schedule(dynamic) if (n <= 8)
    for (int i = 0; i < cfg.n_samples; ++i) {
      // Draws depend only on (n, sample), so every lambda sees the same landscape.
      Rng r = root.split((static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(i));
      FloquetSpec spec = FloquetSpec::uniform(n, 0.0, 0.0, cfg.phi1, cfg.phi2);
      SpinPattern target;
      if (cfg.kind == EaKind::Scar) {
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
        for (auto& b : bits) b = static_cast<std::uint8_t>(r.below(2));
        target = SpinPattern(bits);
        spec = edit_pattern(spec, target);
      } else {
        spec.bond_scale.resize(static_cast<std::size_t>(n));
        for (auto& s : spec.bond_scale) s = r.uniform(kPi / 8.0, 3.0 * kPi / 8.0);
      }
      for (std::size_t l = 0; l < nl; ++l) {
        spec.lambda1 = spec.lambda2 = cfg.lambdas[l];
        const SpectrumReport rep = diagonalize(build_floquet_matrix(spec), cfg.kind == EaKind::Mbl);
        double value = 0.0;
        if (cfg.kind == EaKind::Scar) {
          value = edwards_anderson(rep.vector(max_overlap_state(rep, target)), n);
        } else {
          value = mean_of(rep.ea);
        }
        chi[l][static_cast<std::size_t>(i)] = value;
      }
    }
    std::vector<double> means(nl), errs(nl);
    for (std::size_t l = 0; l < nl; ++l) {
      const double m = mean_of(chi[l]);
      double var = 0.0;
      for (double v : chi[l]) var += (v - m) * (v - m);
      const double ns = static_cast<double>(cfg.n_samples);
      means[l] = m;
      errs[l] = cfg.n_samples > 1 ? std::sqrt(var / (ns - 1.0) / ns) : 0.0;
    }
    res.chi.push_back(std::move(means));
    res.chi_stderr.push_back(std::move(errs));
  }

  std::vector<double> found;
  for (std::size_t k = 0; k + 1 < res.sizes.size(); ++k) {
    auto c = curve_crossing(res.lambdas, res.chi[k + 1], res.chi[k]);
    res.pair_crossings.push_back(c);
    if (c) found.push_back(*c);
  }
  if (!found.empty()) res.crossing = mean_of(found);
  return res;
}

}  // namespace catdtc
