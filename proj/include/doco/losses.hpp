#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "doco/domain.hpp"

namespace doco {

enum class LossKind {
  kPiecewiseAbsolute,   // f_t(w) = G * ||w - theta_t||, theta_t constant per segment
  kDriftingLinear,      // f_t(w) = <g_t, w - center> + G*radius, g_t a slow drift
  kAdversarialSign,     // linear along the first axis with the sign alternating
                        // every round, countering a gradient-following learner
};

LossKind loss_kind_from_string(const std::string& name);
std::string to_string(LossKind kind);

struct LossEval {
  double value;
  Eigen::VectorXd gradient;
};

// A full horizon of convex loss oracles. All per-round data is materialized
// at construction from the seed, so evaluation is a pure function of
// (t, query point) and replay is bit-exact. Values lie in [0, G*D] by an
// additive shift (gradients are never rescaled); gradient norms are at most
// G; each f_t is convex.
class LossSequence {
 public:
  int horizon() const { return horizon_; }
  const Domain& domain() const { return domain_; }
  const ProblemBounds& bounds() const { return bounds_; }
  LossKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  int segments() const { return segments_; }

  double value(int t, const Eigen::VectorXd& w) const;
  Eigen::VectorXd gradient(int t, const Eigen::VectorXd& w) const;
  LossEval eval(int t, const Eigen::VectorXd& w) const;

  // Structure hooks used by the exact comparators.
  bool is_linear() const { return kind_ != LossKind::kPiecewiseAbsolute; }
  // linear kinds: f_t(w) = <linear_gradient(t), w - center> + linear_offset(t)
  const Eigen::VectorXd& linear_gradient(int t) const;
  double linear_offset(int t) const;
  // absolute kind: the anchor theta_t
  const Eigen::VectorXd& anchor(int t) const;
  // rounds (0-based) at which a new segment starts; front() == 0
  const std::vector<int>& segment_starts() const { return segment_starts_; }

  // plain-text key=value descriptor (one entry per line)
  std::string descriptor() const;

 private:
  friend LossSequence make_loss_sequence(LossKind, int, const Domain&,
                                         const ProblemBounds&, std::uint64_t, int);
  LossSequence(LossKind kind, int horizon, Domain domain, ProblemBounds bounds,
               std::uint64_t seed, int segments);

  void check_round(int t) const;

  LossKind kind_;
  int horizon_;
  Domain domain_;
  ProblemBounds bounds_;
  std::uint64_t seed_;
  int segments_;
  std::vector<int> segment_starts_;
  std::vector<Eigen::VectorXd> per_round_;  // theta_t or g_t
  std::vector<double> offsets_;             // linear kinds only
};

// segments applies to the piecewise-absolute kind only (ignored otherwise).
LossSequence make_loss_sequence(LossKind kind, int horizon, const Domain& domain,
                                const ProblemBounds& bounds, std::uint64_t seed,
                                int segments = 2);

}  // namespace doco
