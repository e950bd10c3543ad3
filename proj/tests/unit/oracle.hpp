#pragma once

// Dense reference implementations built directly from operator definitions,
// independent of the library kernels.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <cstdint>
#include <random>
#include <span>

#include "catdtc/catdtc.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Eigen::Matrix2cd mat2(const catdtc::Mat2& m) {
  Eigen::Matrix2cd r;
  r << m[0], m[1], m[2], m[3];
  return r;
}

// Single-site operator on qubit q (bit q of the index).
inline Mat embed1(const Eigen::Matrix2cd& m, int q, int n) {
  const std::size_t dim = std::size_t{1} << n;
  Mat out = Mat::Zero(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const int bc = (c >> q) & 1;
    for (int br = 0; br < 2; ++br) {
      const std::size_t r = (c & ~(std::size_t{1} << q)) | (static_cast<std::size_t>(br) << q);
      out(r, c) += m(br, bc);
    }
  }
  return out;
}

// Two-site operator; m is indexed by 2 * b_j + b_k.
inline Mat embed2(const catdtc::Mat4& m, int j, int k, int n) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t mj = std::size_t{1} << j, mk = std::size_t{1} << k;
  Mat out = Mat::Zero(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const int cin = 2 * static_cast<int>((c >> j) & 1) + static_cast<int>((c >> k) & 1);
    for (int rin = 0; rin < 4; ++rin) {
      std::size_t r = c & ~(mj | mk);
      if (rin & 2) r |= mj;
      if (rin & 1) r |= mk;
      out(r, c) += m[static_cast<std::size_t>(rin * 4 + cin)];
    }
  }
  return out;
}

inline Eigen::Matrix2cd pauli(char p) {
  Eigen::Matrix2cd m;
  const cplx i(0, 1);
  switch (p) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, -i, i, 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: m.setIdentity();
  }
  return m;
}

// exp(-i theta P / 2) for a Pauli P.
inline Eigen::Matrix2cd rot(char p, double theta) {
  return std::cos(theta / 2) * Eigen::Matrix2cd::Identity() - cplx(0, 1) * std::sin(theta / 2) * pauli(p);
}

// exp(-i H) for Hermitian H.
inline Mat expm_hermitian(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec ph(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = std::polar(1.0, -es.eigenvalues()(i));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

// U_F = U2 U1 with
//   U1 = prod_j [e^{-i phi1 Z/2} e^{i lambda1 Y/2} e^{-i phi2 Z/2}] e^{-i pi sum X/2}
//   U2 = exp(-i T sum_j J_j Zt_j Zt_{j+1}),  Zt = cos(lambda2) Z + sin(lambda2) X
inline Mat floquet(const catdtc::FloquetSpec& s) {
  const int n = s.n;
  const std::size_t dim = std::size_t{1} << n;
  const Eigen::Matrix2cd site = rot('z', s.phi1) * rot('y', -s.lambda1) * rot('z', s.phi2) * rot('x', catdtc::kPi);
  Mat u1 = Mat::Identity(dim, dim);
  for (int q = 0; q < n; ++q) u1 = embed1(site, q, n) * u1;
  const Eigen::Matrix2cd zt = std::cos(s.lambda2) * pauli('z') + std::sin(s.lambda2) * pauli('x');
  Mat h = Mat::Zero(dim, dim);
  for (int j = 0; j < n; ++j) h += s.T * s.coupling(j) * embed1(zt, j, n) * embed1(zt, (j + 1) % n, n);
  return expm_hermitian(h) * u1;
}

inline Mat to_eigen(const catdtc::FloquetMatrix& m) {
  Mat out(m.dim, m.dim);
  for (std::size_t c = 0; c < m.dim; ++c)
    for (std::size_t r = 0; r < m.dim; ++r) out(r, c) = m(r, c);
  return out;
}

inline Vec to_eigen(std::span<const cplx> v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

// max |a - e^{i theta} b| with theta fitted from the overlap.
inline double distance_up_to_phase(const Mat& a, const Mat& b) {
  const cplx ov = (b.adjoint() * a).trace();
  const cplx ph = std::abs(ov) > 0 ? ov / std::abs(ov) : 1.0;
  return (a - ph * b).cwiseAbs().maxCoeff();
}

inline catdtc::StateVector random_state(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> d;
  catdtc::StateVector s(n);
  for (auto& a : s.amps()) a = cplx(d(g), d(g));
  s.normalize();
  return s;
}

inline catdtc::Mat2 random_unitary2(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-catdtc::kPi, catdtc::kPi);
  const Eigen::Matrix2cd m = std::polar(1.0, u(g)) * rot('z', u(g)) * rot('y', u(g)) * rot('z', u(g));
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

}  // namespace oracle
