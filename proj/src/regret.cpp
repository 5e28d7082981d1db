#include "doco/regret.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "doco/confidence.hpp"

namespace doco {
namespace {

void check_horizon(const LossSequence& losses, int horizon) {
  if (horizon < 1 || horizon > losses.horizon())
    throw std::invalid_argument("horizon must lie in [1, T]");
}

// Discounted weight per anchor for the piecewise-absolute kind. Anchors
// repeat within a segment, so the aggregate has one entry per segment.
struct WeightedAnchors {
  std::vector<Eigen::VectorXd> points;
  std::vector<double> weights;  // sum lambda^{horizon-t} over the anchor's rounds
};

WeightedAnchors aggregate_anchors(const LossSequence& losses, double lambda,
                                  int horizon) {
  WeightedAnchors agg;
  const auto& starts = losses.segment_starts();
  double weight = 1.0;  // lambda^{horizon-t}, walking t from horizon down to 1
  std::vector<double> per_segment(starts.size(), 0.0);
  for (int t = horizon - 1; t >= 0; --t) {
    const auto seg = std::upper_bound(starts.begin(), starts.end(), t) - starts.begin() - 1;
    per_segment[seg] += weight;
    weight *= lambda;
  }
  for (std::size_t k = 0; k < starts.size(); ++k) {
    if (per_segment[k] <= 0.0) continue;  // segment entirely past the horizon
    agg.points.push_back(losses.anchor(starts[k]));
    agg.weights.push_back(per_segment[k]);
  }
  return agg;
}

double weighted_absolute_value(const WeightedAnchors& agg, double G,
                               const Eigen::VectorXd& w) {
  double v = 0.0;
  for (std::size_t k = 0; k < agg.points.size(); ++k)
    v += agg.weights[k] * G * (w - agg.points[k]).norm();
  return v;
}

ComparatorResult comparator_linear(const LossSequence& losses, double lambda,
                                   int horizon) {
  const auto& domain = losses.domain();
  Eigen::VectorXd s = Eigen::VectorXd::Zero(domain.dim());
  double c = 0.0;
  for (int t = 0; t < horizon; ++t) {
    s = lambda * s + losses.linear_gradient(t);
    c = lambda * c + losses.linear_offset(t);
  }
  ComparatorResult result;
  const double norm = s.norm();
  if (norm < 1e-300) {
    result.minimizer = domain.center();
    result.value = c;
  } else {
    result.minimizer = domain.center() - domain.radius() * s / norm;
    result.value = c - domain.radius() * norm;
  }
  result.error_bound = 0.0;
  return result;
}

ComparatorResult comparator_median_1d(const LossSequence& losses, double lambda,
                                      int horizon) {
  const WeightedAnchors agg = aggregate_anchors(losses, lambda, horizon);
  std::vector<std::size_t> order(agg.points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return agg.points[a][0] < agg.points[b][0];
  });
  double total = 0.0;
  for (double w : agg.weights) total += w;
  double acc = 0.0;
  Eigen::VectorXd median = agg.points[order.back()];
  for (std::size_t i : order) {
    acc += agg.weights[i];
    if (acc >= 0.5 * total) {
      median = agg.points[i];
      break;
    }
  }
  ComparatorResult result;
  result.minimizer = median;
  result.value = weighted_absolute_value(agg, losses.bounds().G, median);
  result.error_bound = 0.0;
  return result;
}

// Weighted geometric median over the aggregated anchors. The minimizer lies
// in the convex hull, hence inside the ball, so the constraint never binds.
ComparatorResult comparator_geometric_median(const LossSequence& losses,
                                             double lambda, int horizon) {
  const WeightedAnchors agg = aggregate_anchors(losses, lambda, horizon);
  const double G = losses.bounds().G;
  const auto& domain = losses.domain();
  const std::size_t m = agg.points.size();

  ComparatorResult result;
  if (m == 1) {
    result.minimizer = agg.points[0];
    result.value = 0.0;
    result.error_bound = 0.0;
    return result;
  }

  // A data point is optimal iff the pull of the others is within its own
  // weight; that case is exact.
  for (std::size_t j = 0; j < m; ++j) {
    Eigen::VectorXd pull = Eigen::VectorXd::Zero(domain.dim());
    for (std::size_t i = 0; i < m; ++i) {
      if (i == j) continue;
      const Eigen::VectorXd d = agg.points[j] - agg.points[i];
      const double n = d.norm();
      if (n < 1e-300) continue;
      pull += agg.weights[i] * d / n;
    }
    if (pull.norm() <= agg.weights[j]) {
      result.minimizer = agg.points[j];
      result.value = weighted_absolute_value(agg, G, agg.points[j]);
      result.error_bound = 0.0;
      return result;
    }
  }

  // Weiszfeld iterations from the weighted mean; no vertex is optimal, so
  // iterates stay off the data points generically.
  Eigen::VectorXd w = Eigen::VectorXd::Zero(domain.dim());
  double wsum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    w += agg.weights[i] * agg.points[i];
    wsum += agg.weights[i];
  }
  w /= wsum;
  double gap = 0.0;
  for (int iter = 0; iter < 400; ++iter) {
    Eigen::VectorXd num = Eigen::VectorXd::Zero(domain.dim());
    double den = 0.0;
    bool at_vertex = false;
    for (std::size_t i = 0; i < m; ++i) {
      const double n = (w - agg.points[i]).norm();
      if (n < 1e-14) { at_vertex = true; break; }
      num += agg.weights[i] / n * agg.points[i];
      den += agg.weights[i] / n;
    }
    if (at_vertex) break;
    w = num / den;
    // gradient-gap certificate: F(w) - F* <= <grad, w - c> + r ||grad||
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(domain.dim());
    for (std::size_t i = 0; i < m; ++i) {
      const Eigen::VectorXd d = w - agg.points[i];
      const double n = d.norm();
      if (n >= 1e-300) grad += agg.weights[i] * G * d / n;
    }
    gap = grad.dot(w - domain.center()) + domain.radius() * grad.norm();
    if (gap <= 1e-10 * std::max(1.0, wsum * G)) break;
  }
  result.minimizer = w;
  result.value = weighted_absolute_value(agg, G, w);
  result.error_bound = std::max(gap, 0.0);
  return result;
}

}  // namespace

double discounted_loss(const std::vector<Eigen::VectorXd>& decisions,
                       const LossSequence& losses, double lambda, int horizon) {
  check_horizon(losses, horizon);
  if (static_cast<int>(decisions.size()) < horizon)
    throw std::invalid_argument("discounted_loss: fewer decisions than horizon");
  if (!(lambda > 0.0) || lambda > 1.0)
    throw std::invalid_argument("discounted_loss: lambda must lie in (0, 1]");
  double acc = 0.0;
  for (int t = 0; t < horizon; ++t) acc = lambda * acc + losses.value(t, decisions[t]);
  return acc;
}

ComparatorResult best_comparator(const LossSequence& losses, double lambda,
                                 int horizon) {
  check_horizon(losses, horizon);
  if (!(lambda > 0.0) || lambda > 1.0)
    throw std::invalid_argument("best_comparator: lambda must lie in (0, 1]");
  if (losses.is_linear()) return comparator_linear(losses, lambda, horizon);
  if (losses.domain().dim() == 1) return comparator_median_1d(losses, lambda, horizon);
  return comparator_geometric_median(losses, lambda, horizon);
}

ComparatorResult grid_comparator(const LossSequence& losses, double lambda,
                                 int horizon, int points_per_axis) {
  check_horizon(losses, horizon);
  if (points_per_axis < 2)
    throw std::invalid_argument("grid_comparator: need at least 2 points per axis");
  const auto& domain = losses.domain();
  const int d = static_cast<int>(domain.dim());
  const double r = domain.radius();
  const double spacing = 2.0 * r / (points_per_axis - 1);

  const auto objective = [&](const Eigen::VectorXd& w) {
    double acc = 0.0;
    for (int t = 0; t < horizon; ++t) acc = lambda * acc + losses.value(t, w);
    return acc;
  };

  // lattice over the bounding box, every point projected into the ball;
  // projection is non-expansive so the a-priori error bound survives it
  Eigen::VectorXd best = domain.center();
  double best_value = objective(best);
  std::vector<int> idx(d, 0);
  while (true) {
    Eigen::VectorXd p(d);
    for (int k = 0; k < d; ++k) p[k] = domain.center()[k] - r + spacing * idx[k];
    const Eigen::VectorXd q = domain.project(p);
    const double v = objective(q);
    if (v < best_value) {
      best_value = v;
      best = q;
    }
    int k = 0;
    while (k < d && ++idx[k] == points_per_axis) idx[k++] = 0;
    if (k == d) break;
  }

  // local refinement: projected subgradient with shrinking steps
  Eigen::VectorXd w = best;
  double step = spacing;
  for (int iter = 0; iter < 200; ++iter) {
    // discounted subgradient, Horner over rounds
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(d);
    for (int t = 0; t < horizon; ++t) grad = lambda * grad + losses.gradient(t, w);
    const double n = grad.norm();
    if (n < 1e-300) break;
    w = domain.project(w - step * grad / n);
    const double v = objective(w);
    if (v < best_value) {
      best_value = v;
      best = w;
    } else {
      step *= 0.7;
      w = best;
    }
  }

  ComparatorResult result;
  result.minimizer = best;
  result.value = best_value;
  result.error_bound = losses.bounds().G * spacing * std::sqrt(static_cast<double>(d));
  return result;
}

double smoothed_average(std::span<const double> s, double lambda, int horizon) {
  if (horizon < 1 || horizon > static_cast<int>(s.size()))
    throw std::invalid_argument("smoothed_average: bad horizon");
  double acc = 0.0;
  for (int t = 0; t < horizon; ++t) acc = lambda * acc + s[t];
  return (1.0 - lambda) * acc;
}

SmoothedDecomposition smoothed_average_decompose(std::span<const double> s,
                                                 double lambda1, double lambda2) {
  if (!(lambda2 > 0.0) || !(lambda2 < lambda1) || !(lambda1 < 1.0))
    throw std::invalid_argument(
        "smoothed_average_decompose: need 0 < lambda2 < lambda1 < 1");
  const int T = static_cast<int>(s.size());
  if (T < 1) throw std::invalid_argument("smoothed_average_decompose: empty sequence");

  SmoothedDecomposition out;
  out.coefficients.resize(T);
  out.coefficients[T - 1] = (1.0 - lambda1) / (1.0 - lambda2);
  // walking k = T-1 down to 1, the factor lambda1^{T-k-1} grows by *lambda1
  double power = 1.0;
  const double scale = (1.0 - lambda1) * (lambda1 - lambda2) / (1.0 - lambda2);
  for (int k = T - 1; k >= 1; --k) {
    out.coefficients[k - 1] = scale * power;
    power *= lambda1;
  }
  out.truncation_mass = power * (lambda1 - lambda2) / (1.0 - lambda2);

  // prefix smoothed averages in one sweep
  double acc = 0.0;
  double recon = 0.0;
  for (int k = 1; k <= T; ++k) {
    acc = lambda2 * acc + s[k - 1];
    recon += out.coefficients[k - 1] * (1.0 - lambda2) * acc;
  }
  out.reconstructed = recon;
  return out;
}

BoundFormula bound_formula_from_string(const std::string& id) {
  if (id == "ogd-tuned") return BoundFormula::kOgdTuned;
  if (id == "sogd-grid") return BoundFormula::kSogdGrid;
  if (id == "sogd-uniform") return BoundFormula::kSogdUniform;
  if (id == "combiner-vs-first") return BoundFormula::kCombinerVsFirst;
  if (id == "combiner-vs-second") return BoundFormula::kCombinerVsSecond;
  throw std::invalid_argument("unknown bound formula id: " + id);
}

std::string to_string(BoundFormula formula) {
  switch (formula) {
    case BoundFormula::kOgdTuned: return "ogd-tuned";
    case BoundFormula::kSogdGrid: return "sogd-grid";
    case BoundFormula::kSogdUniform: return "sogd-uniform";
    case BoundFormula::kCombinerVsFirst: return "combiner-vs-first";
    case BoundFormula::kCombinerVsSecond: return "combiner-vs-second";
  }
  throw std::invalid_argument("unknown BoundFormula");
}

double bound_value(BoundFormula formula, const BoundParams& p) {
  const double GD = p.G * p.D;
  const double one_minus = 1.0 - p.lambda;
  if (!(one_minus > 0.0))
    throw std::invalid_argument("bound_value: lambda must be below 1");
  switch (formula) {
    case BoundFormula::kOgdTuned:
      return GD * std::sqrt(2.0) / std::sqrt(one_minus);
    case BoundFormula::kSogdGrid: {
      const double L = std::log(1.0 / p.Z);
      return GD / std::sqrt(one_minus) * (4.0 * std::sqrt(L) + std::sqrt(2.0)) +
             GD * (p.N + 1) * p.Z / (2.0 * one_minus) + GD;
    }
    case BoundFormula::kSogdUniform: {
      const double L = std::log(1.0 / p.Z);
      return 2.0 * GD / std::sqrt(one_minus) * (4.0 * std::sqrt(L) + std::sqrt(2.0)) +
             GD * (p.N + 1) * p.Z / one_minus + 2.0 * GD;
    }
    case BoundFormula::kCombinerVsFirst:
      return GD * p.Z / (2.0 * one_minus);
    case BoundFormula::kCombinerVsSecond: {
      const ConfidenceParams params(1.0 / one_minus, p.Z);
      return GD * (p.Z / (2.0 * one_minus) + params.threshold() + 1.0);
    }
  }
  throw std::invalid_argument("unknown BoundFormula");
}

RegretReport check_bound(BoundFormula formula, const BoundParams& params,
                         double learner_loss, const ComparatorResult& comparator,
                         int horizon) {
  RegretReport report;
  report.lambda = params.lambda;
  report.learner_loss = learner_loss;
  report.comparator_loss = comparator.value;
  report.regret = learner_loss - comparator.value;
  report.bound = bound_value(formula, params);
  report.slack = comparator.error_bound + 1e-6;
  report.pass = report.regret <= report.bound + report.slack;
  report.horizon = horizon;
  return report;
}

}  // namespace doco
