#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "doco/combiner.hpp"
#include "doco/losses.hpp"
#include "doco/ogd.hpp"

namespace doco {

// Geometric grid of discount factors lambda_i = 1 - 2^{i-1}/T, i = 1..N+1,
// N = ceil(log2(T/tau)) computed in exact integer arithmetic. Descending by
// construction; the smallest window T/2^N is at least tau/2.
struct DiscountGrid {
  int T = 0;
  int tau = 0;
  int N = 0;
  std::vector<double> lambdas;
};

DiscountGrid build_grid(int T, int tau);

// Theorem regime for the uniform bound: tau >= max{16e, 32 log(1/Z)}.
bool sogd_regime_ok(int tau, double Z);

// The chain: a fixed baseline (the domain center), one OGD expert per grid
// point with step size D/G * sqrt(2^i / T), and one conservative-DNP
// combiner per level whose discount matches its expert. Levels run in
// descending discount order; level i combines level i-1's output with
// expert i's iterate.
class SogdStack {
 public:
  SogdStack(const DiscountGrid& grid, double Z, const Domain& domain,
            const ProblemBounds& bounds);

  int levels() const { return static_cast<int>(experts_.size()); }
  const DiscountGrid& grid() const { return grid_; }
  const Eigen::VectorXd& baseline() const { return baseline_; }
  const std::vector<OgdExpert>& experts() const { return experts_; }
  const std::vector<Combiner>& combiners() const { return combiners_; }

  // One full round: produce the decision from pre-round state, then update
  // every expert (on its own iterate's gradient) and every combiner (on the
  // round's loss values).
  Eigen::VectorXd round(const LossSequence& losses, int t);

 private:
  DiscountGrid grid_;
  Domain domain_;
  ProblemBounds bounds_;
  Eigen::VectorXd baseline_;
  std::vector<OgdExpert> experts_;
  std::vector<Combiner> combiners_;
};

struct SogdRun {
  DiscountGrid grid;
  double Z = 0.0;
  bool regime_ok = true;
  std::string regime_warning;
  std::vector<Eigen::VectorXd> decisions;       // w_t, size T
  std::vector<std::vector<double>> omegas;      // T x (N+1)
  std::vector<std::vector<double>> deviations;  // T x (N+1), combiner x_t
  std::vector<std::vector<double>> bits;        // T x (N+1), ell fed at round t
};

// Z <= 0 selects the default Z = 1/T.
SogdRun run_sogd(int T, int tau, double Z, const LossSequence& losses);

}  // namespace doco
