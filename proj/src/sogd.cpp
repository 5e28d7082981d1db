#include "doco/sogd.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace doco {

DiscountGrid build_grid(int T, int tau) {
  if (T < 1) throw std::invalid_argument("build_grid: T must be >= 1");
  if (tau < 1 || tau > T)
    throw std::invalid_argument("build_grid: tau must lie in [1, T]");
  // N = ceil(log2(T / tau)): smallest N with tau * 2^N >= T
  int N = 0;
  while ((static_cast<long long>(tau) << N) < T) ++N;
  DiscountGrid grid;
  grid.T = T;
  grid.tau = tau;
  grid.N = N;
  grid.lambdas.reserve(N + 1);
  double window_inv = 1.0 / static_cast<double>(T);  // 2^{i-1} / T
  for (int i = 1; i <= N + 1; ++i) {
    grid.lambdas.push_back(1.0 - window_inv);
    window_inv *= 2.0;
  }
  return grid;
}

bool sogd_regime_ok(int tau, double Z) {
  return tau >= std::max(16.0 * M_E, 32.0 * std::log(1.0 / Z));
}

SogdStack::SogdStack(const DiscountGrid& grid, double Z, const Domain& domain,
                     const ProblemBounds& bounds)
    : grid_(grid), domain_(domain), bounds_(bounds), baseline_(domain.center()) {
  const int levels = grid_.N + 1;
  experts_.reserve(levels);
  combiners_.reserve(levels);
  for (int i = 0; i < levels; ++i) {
    const double lambda = grid_.lambdas[i];
    if (!(lambda > 0.0) || !(lambda < 1.0))
      throw std::invalid_argument("SogdStack: grid discount outside (0, 1)");
    experts_.emplace_back(domain_, bounds_, step_size_for(lambda, bounds_),
                          domain_.center());
    // combiner i's predictor discount equals expert i's target discount
    combiners_.emplace_back(ConfidenceParams(1.0 / (1.0 - lambda), Z), bounds_);
  }
}

Eigen::VectorXd SogdStack::round(const LossSequence& losses, int t) {
  const int levels = this->levels();
  // chain pass over pre-round state
  std::vector<Eigen::VectorXd> chain;
  chain.reserve(levels + 1);
  chain.push_back(baseline_);
  for (int i = 0; i < levels; ++i)
    chain.push_back(combiners_[i].combine(chain.back(), experts_[i].iterate()));

  // updates strictly after the round's outputs are fixed
  for (int i = 0; i < levels; ++i) {
    const Eigen::VectorXd& wi = experts_[i].iterate();
    combiners_[i].feed_losses(losses.value(t, chain[i]), losses.value(t, wi));
    experts_[i].step(losses.gradient(t, wi));
  }
  return chain.back();
}

SogdRun run_sogd(int T, int tau, double Z, const LossSequence& losses) {
  if (losses.horizon() < T)
    throw std::invalid_argument("run_sogd: loss sequence shorter than T");
  if (Z <= 0.0) Z = 1.0 / static_cast<double>(T);

  SogdRun run;
  run.grid = build_grid(T, tau);
  run.Z = Z;
  run.regime_ok = sogd_regime_ok(tau, Z);
  if (!run.regime_ok) {
    std::ostringstream msg;
    msg << "tau=" << tau << " is below max{16e, 32 log(1/Z)}="
        << std::max(16.0 * M_E, 32.0 * std::log(1.0 / Z))
        << "; uniform-regret guarantees are not in force";
    run.regime_warning = msg.str();
  }

  SogdStack stack(run.grid, Z, losses.domain(), losses.bounds());
  const int levels = stack.levels();
  run.decisions.reserve(T);
  run.omegas.reserve(T);
  run.deviations.reserve(T);
  run.bits.reserve(T);
  for (int t = 0; t < T; ++t) {
    std::vector<double> om(levels), dev(levels), bit(levels);
    for (int i = 0; i < levels; ++i) {
      om[i] = stack.combiners()[i].omega();
      dev[i] = stack.combiners()[i].predictor().deviation();
    }
    run.decisions.push_back(stack.round(losses, t));
    for (int i = 0; i < levels; ++i) bit[i] = stack.combiners()[i].last_bit();
    run.omegas.push_back(std::move(om));
    run.deviations.push_back(std::move(dev));
    run.bits.push_back(std::move(bit));
  }
  return run;
}

}  // namespace doco
