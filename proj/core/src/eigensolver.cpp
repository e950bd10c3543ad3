// Unitary eigensolver: Hermitian part via zheevr, then a small Schur step on
// every near-degenerate block of the Hermitian part (cos eps collides for
// eps and -eps, and flattens near 0 and pi).

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#include <cblas.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "catdtc/spectral.hpp"

namespace catdtc {

namespace {

constexpr double kClusterTol = 1e-5;

using Index = lapack_int;

void gemm(const cplx* a, const cplx* b, cplx* c, Index m, Index n, Index k, Index lda, Index ldb,
          Index ldc, CBLAS_TRANSPOSE ta = CblasNoTrans) {
  const cplx one{1.0, 0.0};
  const cplx zero{0.0, 0.0};
  cblas_zgemm(CblasColMajor, ta, CblasNoTrans, m, n, k, &one, a, lda, b, ldb, &zero, c, ldc);
}

// Schur vectors of a k x k matrix (column-major, overwritten).
std::vector<cplx> schur_vectors(std::vector<cplx>& a, Index k) {
  std::vector<cplx> w(static_cast<std::size_t>(k));
  std::vector<cplx> vs(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
  Index sdim = 0;
  const Index info = LAPACKE_zgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, k, a.data(), k, &sdim,
                                   w.data(), vs.data(), k);
  if (info != 0) throw std::runtime_error("zgees failed with info " + std::to_string(info));
  return vs;
}

double fold_phase(double e) {
  if (e <= -kPi) e += 2.0 * kPi;
  if (e > kPi) e -= 2.0 * kPi;
  return e;
}

}  // namespace

Eigensystem diagonalize_unitary(std::span<const cplx> u, std::size_t dim, double tol) {
  if (u.size() != dim * dim) throw std::invalid_argument("matrix size does not match dim");
  const Index n = static_cast<Index>(dim);
  Eigensystem out;
  out.dim = dim;
  if (dim == 0) return out;

  // V <- eigenvectors of (U + U^dag)/2.
  std::vector<cplx> v(dim * dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r)
      v[r + c * dim] = 0.5 * (u[r + c * dim] + std::conj(u[c + r * dim]));
  // zheevr rather than zheevd: the divide-and-conquer driver in the system
  // LAPACK returns wrong eigenvectors from n = 512 upwards.
  std::vector<double> h_eval(dim);
  {
    std::vector<cplx> z(dim * dim);
    std::vector<Index> isuppz(2 * dim);
    Index found = 0;
    const Index info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'A', 'U', n, v.data(), n, 0.0, 0.0, 0,
                                      0, 0.0, &found, h_eval.data(), z.data(), n, isuppz.data());
    if (info != 0 || found != n) {
      throw std::runtime_error("zheevr failed with info " + std::to_string(info));
    }
    v = std::move(z);
  }

  std::vector<cplx> w(dim * dim);
  gemm(u.data(), v.data(), w.data(), n, n, n, n, n, n);

  // Clusters of consecutive close Hermitian eigenvalues.
  std::vector<std::pair<std::size_t, std::size_t>> clusters;  // [begin, end)
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= dim; ++i) {
    if (i == dim || h_eval[i] - h_eval[i - 1] > kClusterTol) {
      clusters.emplace_back(begin, i);
      begin = i;
    }
  }
  std::size_t largest = 0;
  for (const auto& [b, e] : clusters) largest = std::max(largest, e - b);

  if (largest > std::max<std::size_t>(dim / 4, 64) || dim <= 64) {
    // Heavy degeneracy: a full Schur decomposition is cheaper and exact.
    std::vector<cplx> a(u.begin(), u.end());
    v = schur_vectors(a, n);
    gemm(u.data(), v.data(), w.data(), n, n, n, n, n, n);
  } else {
    std::vector<cplx> c, tmp;
    for (const auto& [b, e] : clusters) {
      const Index k = static_cast<Index>(e - b);
      if (k < 2) continue;
      cplx* vc = v.data() + b * dim;
      cplx* wc = w.data() + b * dim;
      c.assign(static_cast<std::size_t>(k * k), cplx{});
      gemm(vc, wc, c.data(), k, k, n, n, n, k, CblasConjTrans);
      const std::vector<cplx> z = schur_vectors(c, k);
      tmp.assign(dim * static_cast<std::size_t>(k), cplx{});
      gemm(vc, z.data(), tmp.data(), n, k, k, n, k, n);
      std::copy(tmp.begin(), tmp.end(), vc);
      gemm(wc, z.data(), tmp.data(), n, k, k, n, k, n);
      std::copy(tmp.begin(), tmp.end(), wc);
    }
  }

  // Eigenphases from Rayleigh quotients, then residuals.
  std::vector<double> phase(dim);
  std::vector<double> resid(dim);
#pragma omp parallel for schedule(static)
  for (std::size_t m = 0; m < dim; ++m) {
    const cplx* vm = v.data() + m * dim;
    const cplx* wm = w.data() + m * dim;
    cplx r{0.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i) r += std::conj(vm[i]) * wm[i];
    phase[m] = fold_phase(std::arg(r));
    const cplx e = std::polar(1.0, phase[m]);
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += std::norm(wm[i] - e * vm[i]);
    resid[m] = std::sqrt(s);
  }
  out.max_residual = *std::max_element(resid.begin(), resid.end());
  if (!(out.max_residual <= tol)) {
    throw std::runtime_error("eigensolver did not converge: max residual " +
                             std::to_string(out.max_residual));
  }

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return phase[a] < phase[b]; });
  out.phases.resize(dim);
  out.vectors.resize(dim * dim);
  for (std::size_t m = 0; m < dim; ++m) {
    out.phases[m] = phase[order[m]];
    std::copy_n(v.data() + order[m] * dim, dim, out.vectors.data() + m * dim);
  }

  // Spot-check orthonormality on a few columns (full check is O(dim^3)).
  double orth = 0.0;
  const std::size_t probe = std::min<std::size_t>(dim, 8);
  for (std::size_t a = 0; a < probe; ++a) {
    const std::size_t ia = a * (dim - 1) / std::max<std::size_t>(probe - 1, 1);
    for (std::size_t b = 0; b < probe; ++b) {
      const std::size_t ib = b * (dim - 1) / std::max<std::size_t>(probe - 1, 1);
      cplx s{0.0, 0.0};
      for (std::size_t i = 0; i < dim; ++i)
        s += std::conj(out.vectors[i + ia * dim]) * out.vectors[i + ib * dim];
      orth = std::max(orth, std::abs(s - (ia == ib ? 1.0 : 0.0)));
    }
  }
  out.max_orthogonality_error = orth;
  return out;
}

}  // namespace catdtc
