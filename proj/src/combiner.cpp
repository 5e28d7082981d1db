#include "doco/combiner.hpp"

#include <stdexcept>

namespace doco {

Combiner::Combiner(const ConfidenceParams& params, const ProblemBounds& bounds)
    : predictor_(params, UpdateRule::kConservative),
      bounds_(&bounds),
      omega_(predictor_.predict()) {}

Eigen::VectorXd Combiner::combine(const Eigen::VectorXd& w1,
                                  const Eigen::VectorXd& w2) const {
  if (w1.size() != w2.size())
    throw std::invalid_argument("Combiner: dimension mismatch");
  return (1.0 - omega_) * w1 + omega_ * w2;
}

void Combiner::feed_losses(double f_at_w1, double f_at_w2) {
  const double range = bounds_->value_range();
  const double slack = 1e-9;
  if (f_at_w1 < -slack || f_at_w1 > range + slack || f_at_w2 < -slack ||
      f_at_w2 > range + slack)
    throw std::invalid_argument("Combiner: loss value outside [0, G*D]");
  double bit = (f_at_w1 - f_at_w2) / range;
  if (bit > 1.0) bit = 1.0;
  if (bit < -1.0) bit = -1.0;
  predictor_ = predictor_.updated(bit);
  omega_ = predictor_.predict();
  last_bit_ = bit;
}

}  // namespace doco
