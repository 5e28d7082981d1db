#pragma once

#include <Eigen/Core>

#include "doco/dnp.hpp"
#include "doco/domain.hpp"

namespace doco {

// Two-stream aggregator: a conservative DNP instance turns the normalized
// loss difference ell = (f(w1) - f(w2)) / (G*D) into a weight omega in
// [0, 1], and the output is the convex combination (1-omega) w1 + omega w2.
// A fresh combiner has omega = g(0) = 0, so it follows its first stream
// exactly until evidence accumulates.
class Combiner {
 public:
  Combiner(const ConfidenceParams& params, const ProblemBounds& bounds);

  double omega() const { return omega_; }
  const DnpPredictor& predictor() const { return predictor_; }
  double last_bit() const { return last_bit_; }

  Eigen::VectorXd combine(const Eigen::VectorXd& w1, const Eigen::VectorXd& w2) const;

  // Both values must lie in [0, G*D] (1e-9 slack); anything further out is a
  // generator bug and is reported, not clipped.
  void feed_losses(double f_at_w1, double f_at_w2);

 private:
  DnpPredictor predictor_;
  const ProblemBounds* bounds_;
  double omega_;
  double last_bit_ = 0.0;
};

}  // namespace doco
