#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "doco/losses.hpp"

namespace doco {

// sum_{t<=horizon} lambda^{horizon-t} f_t(decisions[t]), Horner-accumulated.
double discounted_loss(const std::vector<Eigen::VectorXd>& decisions,
                       const LossSequence& losses, double lambda, int horizon);

struct ComparatorResult {
  Eigen::VectorXd minimizer;
  double value = 0.0;
  double error_bound = 0.0;  // rigorous bound on value - min
};

// Exact or certified minimizer of the discounted cumulative loss over the
// ball. Linear kinds are closed form (error 0); 1-d absolute losses use the
// exact weighted median; multi-d absolute losses use the weighted geometric
// median with a gradient-gap certificate as the reported error bound.
ComparatorResult best_comparator(const LossSequence& losses, double lambda,
                                 int horizon);

// General fallback: lattice search over the ball (points_per_axis per axis,
// every lattice point projected into the ball) followed by projected
// subgradient refinement. Error bound reported as G * spacing * sqrt(d).
// Evaluates the raw loss oracle, so it is independent of the closed forms.
ComparatorResult grid_comparator(const LossSequence& losses, double lambda,
                                 int horizon, int points_per_axis);

// (1-lambda) * sum_{t<=horizon} lambda^{horizon-t} s_t
double smoothed_average(std::span<const double> s, double lambda, int horizon);

// Writes the lambda1-smoothed average at time T as a nonnegative combination
// of lambda2-smoothed prefix averages: coefficient (1-l1)/(1-l2) on s_T and
// (1-l1)(l1-l2) l1^{T-k-1}/(1-l2) on s_k for k < T. The coefficients sum to
// 1 minus a truncation mass of l1^{T-1} (l1-l2)/(1-l2), reported separately;
// the reconstruction itself is exact.
struct SmoothedDecomposition {
  std::vector<double> coefficients;  // index k-1 holds the weight on s_k^{l2}
  double reconstructed = 0.0;
  double truncation_mass = 0.0;
};

SmoothedDecomposition smoothed_average_decompose(std::span<const double> s,
                                                 double lambda1, double lambda2);

enum class BoundFormula {
  kOgdTuned,          // sqrt(2) GD / sqrt(1-lambda)
  kSogdGrid,          // GD/sqrt(1-l) (4 sqrt(log 1/Z) + sqrt 2) + GD(N+1)Z/(2(1-l)) + GD
  kSogdUniform,       // 2GD/sqrt(1-l) (4 sqrt(log 1/Z) + sqrt 2) + GD(N+1)Z/(1-l) + 2GD
  kCombinerVsFirst,   // GDZ / (2(1-lambda))
  kCombinerVsSecond,  // GD (Z/(2(1-lambda)) + U(n) + 1), n = 1/(1-lambda)
};

BoundFormula bound_formula_from_string(const std::string& id);
std::string to_string(BoundFormula formula);

struct BoundParams {
  double G = 1.0;
  double D = 1.0;
  double lambda = 0.0;
  double Z = 0.0;  // unused by kThm1
  int N = 0;       // unused except kEq29Grid / kThm3Uniform
};

double bound_value(BoundFormula formula, const BoundParams& params);

struct RegretReport {
  double lambda = 0.0;
  double learner_loss = 0.0;
  double comparator_loss = 0.0;
  double regret = 0.0;  // learner_loss - comparator_loss
  double bound = 0.0;
  double slack = 0.0;  // comparator error bound + 1e-6
  bool pass = false;   // regret <= bound + slack
  int horizon = 0;
};

RegretReport check_bound(BoundFormula formula, const BoundParams& params,
                         double learner_loss, const ComparatorResult& comparator,
                         int horizon);

}  // namespace doco
