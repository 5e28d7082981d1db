#include "doco/ogd.hpp"

#include <cmath>
#include <stdexcept>

namespace doco {

double step_size_for(double lambda, const ProblemBounds& bounds) {
  if (!(lambda > 0.0) || !(lambda < 1.0))
    throw std::invalid_argument("step_size_for: lambda must lie in (0, 1)");
  return bounds.D * std::sqrt(2.0 * (1.0 - lambda)) / bounds.G;
}

OgdExpert::OgdExpert(const Domain& domain, const ProblemBounds& bounds, double eta,
                     Eigen::VectorXd w_init)
    : domain_(&domain), bounds_(&bounds), eta_(eta), w_(std::move(w_init)) {
  if (!(eta_ > 0.0)) throw std::invalid_argument("OgdExpert: eta must be positive");
  if (!domain_->contains(w_))
    throw std::invalid_argument("OgdExpert: w_init outside the domain");
}

void OgdExpert::step(const Eigen::VectorXd& gradient) {
  if (gradient.norm() > bounds_->G * (1.0 + 1e-12))
    throw std::invalid_argument("OgdExpert: gradient norm exceeds G");
  w_ = domain_->project(w_ - eta_ * gradient);
}

std::vector<Eigen::VectorXd> run_ogd(double lambda, const LossSequence& losses,
                                     const Eigen::VectorXd& w_init) {
  const double eta = step_size_for(lambda, losses.bounds());
  OgdExpert expert(losses.domain(), losses.bounds(), eta, w_init);
  std::vector<Eigen::VectorXd> decisions;
  decisions.reserve(losses.horizon());
  for (int t = 0; t < losses.horizon(); ++t) {
    decisions.push_back(expert.iterate());
    expert.step(losses.gradient(t, decisions.back()));
  }
  return decisions;
}

std::vector<Eigen::VectorXd> run_ogd(double lambda, const LossSequence& losses) {
  return run_ogd(lambda, losses, losses.domain().center());
}

}  // namespace doco
