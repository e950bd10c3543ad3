#pragma once

#include <vector>

namespace catdtc {

// Leading-order scar IPR model: IPR = 1/2 (1 + vbar2 lambda^2 N)^-2.
struct IprModel {
  double vbar2 = 0.0;
  // Point the model was fitted at.
  double fit_lambda = 0.0;
  int fit_n = 0;
  double fit_ipr = 0.0;
};

struct IprPrediction {
  double ipr = 0.0;
  double error_bound = 0.0;  // (lambda^2 N)^2
};

IprModel fit_vbar2(double lambda, int n, double ipr_numeric);
IprPrediction analytic_ipr(const IprModel& model, double lambda, int n);

// Reduces an angle into (-pi, pi].
double reduce_angle(double a);

struct RabiDetuning {
  double alpha = 0.0;  // rotation per two periods
  double n_z = 0.0;
  double lambda_eff = 0.0;
};

RabiDetuning rabi_detuning(double lambda1, double phi1, double phi2);

struct RabiProbability {
  double exact = 0.0;
  double approx = 0.0;
};

// Return probability of a Fock state under U1 alone after t periods (t even).
RabiProbability rabi_subspace_probability(const RabiDetuning& det, int n, int t);

// Default effective error rates per qubit and period.
inline constexpr double kDtcErrorRate = 0.007;
inline constexpr double kRabiErrorRate = 0.003;

// (1 - e_p)^{N t} sqrt(2) sqrt(ipr).
double dtc_envelope(double ipr, double e_p, int n, double t);
// (1 - e_p)^{N t} exp(-N lambda_eff^2 t^2).
double rabi_envelope(const RabiDetuning& det, double e_p, int n, double t);

struct ButterflyParams {
  double alpha2 = 0.0, beta2 = 0.0, gamma2 = 0.0;
  double alpha0 = 0.0, alpha1 = 0.0, beta1 = 0.0, gamma1 = 0.0;
  double vB1 = 0.0, vB2 = 0.0, vB = 0.0;
};

ButterflyParams butterfly_velocity(double lambda1, double lambda2, double phi1, double phi2,
                                   double J = 1.0);

// Least-squares fits. Coefficients are in increasing power order.
struct PolyFit {
  std::vector<double> coef;
  double rms = 0.0;
};

PolyFit fit_polynomial(const std::vector<double>& x, const std::vector<double>& y, int degree);

}  // namespace catdtc
