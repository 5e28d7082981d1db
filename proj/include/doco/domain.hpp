#pragma once

#include <stdexcept>

#include <Eigen/Core>

#include "doco/rng.hpp"

namespace doco {

// Global problem constants: G bounds every gradient norm, D the domain
// diameter. Loss values live in [0, G*D].
struct ProblemBounds {
  double G = 1.0;
  double D = 1.0;

  ProblemBounds(double grad_bound, double diameter) : G(grad_bound), D(diameter) {
    if (!(G > 0.0) || !(D > 0.0))
      throw std::invalid_argument("ProblemBounds: G and D must be positive");
  }
  double value_range() const { return G * D; }
};

// Euclidean ball. The only domain shape supported: projection is closed form
// and the diameter is exactly 2*radius.
class Domain {
 public:
  Domain(Eigen::VectorXd center, double radius)
      : center_(std::move(center)), radius_(radius) {
    if (!(radius_ > 0.0)) throw std::invalid_argument("Domain: radius must be positive");
    if (center_.size() < 1) throw std::invalid_argument("Domain: empty center");
  }

  Eigen::Index dim() const { return center_.size(); }
  const Eigen::VectorXd& center() const { return center_; }
  double radius() const { return radius_; }
  double diameter() const { return 2.0 * radius_; }

  // Radial projection; identity inside the ball. Idempotent and 1-Lipschitz.
  Eigen::VectorXd project(const Eigen::VectorXd& point) const {
    check_dim(point);
    const Eigen::VectorXd delta = point - center_;
    const double n = delta.norm();
    if (n <= radius_) return point;
    return center_ + delta * (radius_ / n);
  }

  bool contains(const Eigen::VectorXd& point, double tol = 1e-9) const {
    check_dim(point);
    return (point - center_).norm() <= radius_ + tol;
  }

  // uniform draw from the ball
  Eigen::VectorXd sample(Rng& rng) const {
    const Eigen::VectorXd dir = rng.unit_vector(dim());
    const double r = radius_ * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim()));
    return center_ + r * dir;
  }

 private:
  void check_dim(const Eigen::VectorXd& point) const {
    if (point.size() != center_.size())
      throw std::invalid_argument("Domain: dimension mismatch");
  }

  Eigen::VectorXd center_;
  double radius_;
};

inline Eigen::VectorXd project(const Domain& domain, const Eigen::VectorXd& point) {
  return domain.project(point);
}

}  // namespace doco
