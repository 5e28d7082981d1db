#include "doco/dnp.hpp"

#include <cmath>
#include <stdexcept>

namespace doco {

DnpPredictor::DnpPredictor(ConfidenceParams params, UpdateRule rule)
    : params_(params),
      rule_(rule),
      rho_(1.0 - 1.0 / params.n()),
      threshold_(params.threshold()) {  // cached once; never recomputed mid-run
  if (!(rho_ > 0.0))
    throw std::invalid_argument("DnpPredictor: n must exceed 1 so that rho > 0");
}

bool DnpPredictor::accepts(double b) const {
  if (rule_ == UpdateRule::kPlain) return true;
  // ties at x == 0 and x == U take the accept branch (closed interval)
  return (x_ >= 0.0 && x_ <= threshold_) || (x_ < 0.0 && b > 0.0) ||
         (x_ > threshold_ && b < 0.0);
}

DnpPredictor DnpPredictor::updated(double b) const {
  if (std::abs(b) > 1.0 + 1e-12)
    throw std::invalid_argument("DnpPredictor: |b| > 1 violates the bit bound");
  if (b > 1.0) b = 1.0;
  if (b < -1.0) b = -1.0;
  DnpPredictor next = *this;
  next.x_ = accepts(b) ? rho_ * x_ + b : rho_ * x_;
  next.round_ = round_ + 1;
  return next;
}

DnpTrace run_sequence(const ConfidenceParams& params, UpdateRule rule,
                      std::span<const double> bits) {
  DnpTrace trace;
  const std::size_t horizon = bits.size();
  trace.predictions.reserve(horizon);
  trace.deviations.reserve(horizon + 1);
  trace.accepted.reserve(horizon);

  DnpPredictor state(params, rule);
  trace.deviations.push_back(state.deviation());
  for (double b : bits) {
    trace.predictions.push_back(state.predict());
    trace.accepted.push_back(state.accepts(b) ? 1 : 0);
    state = state.updated(b);
    trace.deviations.push_back(state.deviation());
  }
  return trace;
}

double discounted_payoff(std::span<const double> predictions,
                         std::span<const double> bits, double discount) {
  if (predictions.size() != bits.size())
    throw std::invalid_argument("discounted_payoff: length mismatch");
  if (!(discount > 0.0) || discount > 1.0)
    throw std::invalid_argument("discounted_payoff: discount must lie in (0, 1]");
  double acc = 0.0;
  for (std::size_t t = 0; t < bits.size(); ++t)
    acc = discount * acc + predictions[t] * bits[t];
  return acc;
}

}  // namespace doco
