#pragma once

#include <optional>

namespace doco {

// int_0^x e^{-s^2/2} ds. Odd, saturates at sqrt(pi/2) for large x.
double erf_halfgauss(double x);

// Parameters of the confidence function: effective window n (discount
// rho = 1 - 1/n) and scale Z in (0, 1/e]. The saturation threshold
// U(n) = g_tilde^{-1}(1) is located at construction by bisection inside the
// bracket [0, sqrt(16 n log(1/Z))]; if g_tilde stays below 1 on that bracket
// the parameters are inconsistent with the payoff analysis and the threshold
// is left unset.
class ConfidenceParams {
 public:
  ConfidenceParams(double n, double Z);

  double n() const { return n_; }
  double Z() const { return Z_; }

  bool has_threshold() const { return threshold_.has_value(); }
  double threshold() const;  // U(n); throws if the bracket failed

  // Hypotheses of the discounted payoff bounds: Z <= 1/e,
  // n >= max{8e, 16 log(1/Z)} and U(n) >= 22.
  bool meets_payoff_hypotheses() const;

 private:
  double n_;
  double Z_;
  std::optional<double> threshold_;
};

// sqrt(n/8) * Z * erf_halfgauss(x / sqrt(8n)) * e^{x^2/(16n)}. Odd in x,
// strictly increasing for x >= 0. Saturates to +-inf once the exponential
// overflows (|x| far beyond sqrt(n)); callers clip first.
double g_tilde(double x, const ConfidenceParams& p);

// Confidence g(x) = clamp of g_tilde into [0,1]: 0 for x <= 0, 1 for
// x >= U(n).
double g(double x, const ConfidenceParams& p);

double threshold_U(const ConfidenceParams& p);

// Potential Phi(x) = int_0^x g(s) ds. Zero for x <= 0; past U(n) the
// integrand is identically 1, so the tail is added in closed form and the
// quadrature only ever sees the smooth part below U(n).
double potential_phi(double x, const ConfidenceParams& p);

}  // namespace doco
