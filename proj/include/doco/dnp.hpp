#pragma once

#include <span>
#include <vector>

#include "doco/confidence.hpp"

namespace doco {

enum class UpdateRule {
  kPlain,         // x <- rho*x + b every round
  kConservative,  // bit ignored when confidence is saturated and correct
};

// Bit predictor driven by the discounted deviation x_t (x_1 = 0,
// rho = 1 - 1/n). Predicts the confidence g(x_t); the conservative rule
// accepts the bit only when x is in [0, U] or the prediction was wrong
// (x < 0 with b > 0, or x > U with b < 0). Under the conservative rule the
// deviation stays inside [-1, U+1] and moves by at most 2 per round.
//
// A value type: updated() returns the successor state, so replays and
// counterfactual branches are cheap.
class DnpPredictor {
 public:
  DnpPredictor(ConfidenceParams params, UpdateRule rule);

  const ConfidenceParams& params() const { return params_; }
  UpdateRule rule() const { return rule_; }
  double rho() const { return rho_; }
  double threshold() const { return threshold_; }
  double deviation() const { return x_; }
  int round() const { return round_; }

  double predict() const { return g(x_, params_); }

  // True iff the accept branch fires for bit b in the current state.
  bool accepts(double b) const;

  // |b| <= 1 required (a 1e-12 rounding allowance is clamped).
  DnpPredictor updated(double b) const;

 private:
  ConfidenceParams params_;
  UpdateRule rule_;
  double rho_;
  double threshold_;
  double x_ = 0.0;
  int round_ = 0;
};

struct DnpTrace {
  std::vector<double> predictions;  // g(x_t), size T
  std::vector<double> deviations;   // x_1..x_{T+1}, size T+1, deviations[0] = 0
  std::vector<char> accepted;       // branch taken per round, size T
};

DnpTrace run_sequence(const ConfidenceParams& params, UpdateRule rule,
                      std::span<const double> bits);

// sum_t discount^{T-t} * predictions[t] * bits[t], Horner-accumulated from
// the oldest round so no large discount power is ever formed.
double discounted_payoff(std::span<const double> predictions,
                         std::span<const double> bits, double discount);

}  // namespace doco
