#pragma once

#include <vector>

#include <Eigen/Core>

#include "doco/domain.hpp"
#include "doco/losses.hpp"

namespace doco {

// eta = D sqrt(2 (1 - lambda)) / G, the constant step size tuned to a target
// discount factor lambda in (0, 1).
double step_size_for(double lambda, const ProblemBounds& bounds);

// Projected gradient descent with constant step size. The iterate never
// leaves the domain. Domain and bounds are borrowed; the caller keeps them
// alive.
class OgdExpert {
 public:
  OgdExpert(const Domain& domain, const ProblemBounds& bounds, double eta,
            Eigen::VectorXd w_init);

  const Eigen::VectorXd& iterate() const { return w_; }
  double eta() const { return eta_; }

  // w <- project(w - eta * gradient); rejects gradients beyond the G bound.
  void step(const Eigen::VectorXd& gradient);

 private:
  const Domain* domain_;
  const ProblemBounds* bounds_;
  double eta_;
  Eigen::VectorXd w_;
};

// Full run against a loss sequence; decisions[t] is the iterate held before
// observing f_t, and the gradient is queried at decisions[t]. Starts from
// w_init (defaults to the domain center).
std::vector<Eigen::VectorXd> run_ogd(double lambda, const LossSequence& losses,
                                     const Eigen::VectorXd& w_init);
std::vector<Eigen::VectorXd> run_ogd(double lambda, const LossSequence& losses);

}  // namespace doco
