#include "doco/losses.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doco/rng.hpp"

namespace doco {

LossKind loss_kind_from_string(const std::string& name) {
  if (name == "piecewise-stationary-absolute") return LossKind::kPiecewiseAbsolute;
  if (name == "drifting-linear") return LossKind::kDriftingLinear;
  if (name == "adversarial-worst-case") return LossKind::kAdversarialSign;
  throw std::invalid_argument("unknown generator kind: " + name);
}

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::kPiecewiseAbsolute: return "piecewise-stationary-absolute";
    case LossKind::kDriftingLinear: return "drifting-linear";
    case LossKind::kAdversarialSign: return "adversarial-worst-case";
  }
  throw std::invalid_argument("unknown LossKind");
}

LossSequence::LossSequence(LossKind kind, int horizon, Domain domain,
                           ProblemBounds bounds, std::uint64_t seed, int segments)
    : kind_(kind),
      horizon_(horizon),
      domain_(std::move(domain)),
      bounds_(bounds),
      seed_(seed),
      segments_(segments) {
  if (horizon_ < 1) throw std::invalid_argument("LossSequence: horizon must be >= 1");
  if (std::abs(bounds_.D - domain_.diameter()) > 1e-12 * bounds_.D)
    throw std::invalid_argument(
        "LossSequence: bounds.D must equal the domain diameter (2*radius)");
  const double G = bounds_.G;
  const double r = domain_.radius();
  Rng rng(seed_);
  per_round_.reserve(horizon_);

  switch (kind_) {
    case LossKind::kPiecewiseAbsolute: {
      if (segments_ < 1 || segments_ > horizon_)
        throw std::invalid_argument("LossSequence: segments must lie in [1, T]");
      for (int k = 0; k < segments_; ++k)
        segment_starts_.push_back(static_cast<int>(
            static_cast<long long>(k) * horizon_ / segments_));
      Eigen::VectorXd theta = domain_.sample(rng);
      int next_seg = 1;
      for (int t = 0; t < horizon_; ++t) {
        if (next_seg < segments_ && t == segment_starts_[next_seg]) {
          theta = domain_.sample(rng);
          ++next_seg;
        }
        per_round_.push_back(theta);
      }
      break;
    }
    case LossKind::kDriftingLinear: {
      segments_ = 1;
      segment_starts_.push_back(0);
      Eigen::VectorXd dir = rng.unit_vector(domain_.dim());
      offsets_.reserve(horizon_);
      for (int t = 0; t < horizon_; ++t) {
        per_round_.push_back(G * dir);
        offsets_.push_back(G * r);  // shift so min over the ball is exactly 0
        if (domain_.dim() == 1) {
          // a normalized 1-d walk almost never flips; drift by explicit flips
          if (rng.bernoulli(0.02)) dir = -dir;
        } else {
          Eigen::VectorXd step = dir + 0.15 * rng.gaussian_vector(domain_.dim());
          const double n = step.norm();
          if (n > 1e-12) dir = step / n;
        }
      }
      break;
    }
    case LossKind::kAdversarialSign: {
      segments_ = 1;
      segment_starts_.push_back(0);
      // Alternating gradient along the first axis: whichever way a
      // gradient-following learner moved last round, this round's slope
      // penalizes it.
      double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
      Eigen::VectorXd axis = Eigen::VectorXd::Zero(domain_.dim());
      axis[0] = 1.0;
      offsets_.reserve(horizon_);
      for (int t = 0; t < horizon_; ++t) {
        per_round_.push_back(sign * G * axis);
        offsets_.push_back(G * r);
        sign = -sign;
      }
      break;
    }
  }
}

void LossSequence::check_round(int t) const {
  if (t < 0 || t >= horizon_)
    throw std::out_of_range("LossSequence: round index out of range");
}

double LossSequence::value(int t, const Eigen::VectorXd& w) const {
  check_round(t);
  if (w.size() != domain_.dim())
    throw std::invalid_argument("LossSequence: dimension mismatch");
  if (kind_ == LossKind::kPiecewiseAbsolute)
    return bounds_.G * (w - per_round_[t]).norm();
  return per_round_[t].dot(w - domain_.center()) + offsets_[t];
}

Eigen::VectorXd LossSequence::gradient(int t, const Eigen::VectorXd& w) const {
  check_round(t);
  if (w.size() != domain_.dim())
    throw std::invalid_argument("LossSequence: dimension mismatch");
  if (kind_ == LossKind::kPiecewiseAbsolute) {
    const Eigen::VectorXd delta = w - per_round_[t];
    const double n = delta.norm();
    if (n < 1e-300) return Eigen::VectorXd::Zero(domain_.dim());  // subgradient at the kink
    return bounds_.G * delta / n;
  }
  return per_round_[t];
}

LossEval LossSequence::eval(int t, const Eigen::VectorXd& w) const {
  return {value(t, w), gradient(t, w)};
}

const Eigen::VectorXd& LossSequence::linear_gradient(int t) const {
  check_round(t);
  if (!is_linear()) throw std::logic_error("LossSequence: not a linear kind");
  return per_round_[t];
}

double LossSequence::linear_offset(int t) const {
  check_round(t);
  if (!is_linear()) throw std::logic_error("LossSequence: not a linear kind");
  return offsets_[t];
}

const Eigen::VectorXd& LossSequence::anchor(int t) const {
  check_round(t);
  if (is_linear()) throw std::logic_error("LossSequence: not an absolute kind");
  return per_round_[t];
}

std::string LossSequence::descriptor() const {
  std::ostringstream out;
  out << "kind=" << to_string(kind_) << "\n";
  out << "T=" << horizon_ << "\n";
  out << "d=" << domain_.dim() << "\n";
  out << "G=" << bounds_.G << "\n";
  out << "radius=" << domain_.radius() << "\n";
  out << "seed=" << seed_ << "\n";
  out << "segment_starts=";
  for (std::size_t i = 0; i < segment_starts_.size(); ++i) {
    if (i) out << ",";
    out << segment_starts_[i] + 1;  // 1-indexed rounds
  }
  out << "\n";
  return out.str();
}

LossSequence make_loss_sequence(LossKind kind, int horizon, const Domain& domain,
                                const ProblemBounds& bounds, std::uint64_t seed,
                                int segments) {
  return LossSequence(kind, horizon, domain, bounds, seed, segments);
}

}  // namespace doco
