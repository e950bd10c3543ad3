#include "catdtc/analytics.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "catdtc/qstate.hpp"

namespace catdtc {

IprModel fit_vbar2(double lambda, int n, double ipr_numeric) {
  if (!(ipr_numeric > 0.0) || ipr_numeric > 0.5) {
    throw std::invalid_argument("fit_vbar2 needs 0 < ipr <= 0.5");
  }
  if (lambda == 0.0 || n < 1) throw std::invalid_argument("fit_vbar2 needs lambda != 0 and N >= 1");
  IprModel m;
  m.vbar2 = (1.0 / std::sqrt(2.0 * ipr_numeric) - 1.0) / (lambda * lambda * n);
  m.fit_lambda = lambda;
  m.fit_n = n;
  m.fit_ipr = ipr_numeric;
  return m;
}

IprPrediction analytic_ipr(const IprModel& model, double lambda, int n) {
  const double x = lambda * lambda * n;
  const double d = 1.0 + model.vbar2 * x;
  return {0.5 / (d * d), x * x};
}

double reduce_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

RabiDetuning rabi_detuning(double lambda1, double phi1, double phi2) {
  const double d = reduce_angle(phi1 - phi2);
  const double s = std::sin(lambda1 / 2.0);
  RabiDetuning r;
  // acos argument can overshoot 1 by rounding when d = 0.
  r.alpha = std::acos(std::clamp(1.0 - s * s * (1.0 - std::cos(d)), -1.0, 1.0));
  const double sign = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
  r.n_z = sign * std::sin(std::atan(std::tan(lambda1 / 2.0) * std::cos(d / 2.0)));
  r.lambda_eff = 0.5 * r.alpha * std::sqrt(std::max(0.0, 1.0 - r.n_z * r.n_z));
  return r;
}

RabiProbability rabi_subspace_probability(const RabiDetuning& det, int n, int t) {
  if (t % 2 != 0) throw std::invalid_argument("Rabi probability is defined at even periods");
  const double c = std::cos(det.alpha * t / 2.0);
  const double s = std::sin(det.alpha * t / 2.0);
  RabiProbability p;
  p.exact = std::pow(c * c + s * s * det.n_z * det.n_z, n);
  p.approx = std::exp(-n * det.lambda_eff * det.lambda_eff * t * t);
  return p;
}

double dtc_envelope(double ipr, double e_p, int n, double t) {
  if (e_p < 0.0 || e_p >= 1.0) throw std::invalid_argument("e_p must lie in [0, 1)");
  return std::pow(1.0 - e_p, n * t) * std::sqrt(2.0 * ipr);
}

double rabi_envelope(const RabiDetuning& det, double e_p, int n, double t) {
  if (e_p < 0.0 || e_p >= 1.0) throw std::invalid_argument("e_p must lie in [0, 1)");
  return std::pow(1.0 - e_p, n * t) * std::exp(-n * det.lambda_eff * det.lambda_eff * t * t);
}

ButterflyParams butterfly_velocity(double l1, double l2, double p1, double p2, double J) {
  using std::cos;
  using std::sin;
  const double c1 = cos(l1), s1 = sin(l1), c2 = cos(l2), s2 = sin(l2);
  const double ch = cos(l1 / 2.0), sh = sin(l1 / 2.0);
  const double cp1 = cos(p1), sp1 = sin(p1), cp2 = cos(p2), sp2 = sin(p2);

  ButterflyParams b;
  // Two-spin process.
  b.alpha2 = c1 * c2 * c2 - s1 * s2 * c2 * (cp2 + cp1) + s2 * s2 * (sp2 * sp1 - c1 * cp2 * cp1);
  b.beta2 = s2 * c2 * (sp2 * sp1 - c1 * (1.0 + cp2 * cp1)) - s1 * (c2 * c2 * cp1 - s2 * s2 * cp2);
  b.gamma2 = -(s1 * c2 + c1 * s2 * cp2) * sp1 - s2 * sp2 * cp1;
  // Single-spin process.
  b.alpha0 = ch * ch + sh * sh * cos(p2 - p1);
  b.alpha1 = sh * sh * c2 * sin(p2 - p1) + sh * ch * s2 * (sp2 - sp1);
  b.beta1 = -sh * sh * s2 * sin(p2 - p1) + sh * ch * c2 * (sp2 - sp1);
  b.gamma1 = -sh * ch * (cp2 - cp1);

  b.vB1 = std::hypot(b.beta1, b.gamma1);
  b.vB2 = std::abs(sin(J * (b.beta2 * b.beta2 + b.gamma2 * b.gamma2)));
  b.vB = b.vB1 + b.vB2;
  return b;
}

PolyFit fit_polynomial(const std::vector<double>& x, const std::vector<double>& y, int degree) {
  const std::size_t k = static_cast<std::size_t>(degree) + 1;
  if (degree < 0 || x.size() != y.size() || x.size() < k) {
    throw std::invalid_argument("fit_polynomial: need at least degree+1 matching points");
  }
  const std::size_t m = x.size();
  std::vector<double> a(m * k);  // Vandermonde, column-major
  for (std::size_t i = 0; i < m; ++i) {
    double p = 1.0;
    for (std::size_t d = 0; d < k; ++d, p *= x[i]) a[i + d * m] = p;
  }
  std::vector<double> b(y);
  const auto lm = static_cast<lapack_int>(m), lk = static_cast<lapack_int>(k);
  const lapack_int info = LAPACKE_dgels(LAPACK_COL_MAJOR, 'N', lm, lk, 1, a.data(), lm, b.data(), lm);
  if (info != 0) throw std::runtime_error("fit_polynomial: least squares failed");
  PolyFit fit;
  fit.coef.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(k));
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double v = 0.0, p = 1.0;
    for (std::size_t d = 0; d < k; ++d, p *= x[i]) v += fit.coef[d] * p;
    ss += (y[i] - v) * (y[i] - v);
  }
  fit.rms = std::sqrt(ss / static_cast<double>(m));
  return fit;
}

}  // namespace catdtc
