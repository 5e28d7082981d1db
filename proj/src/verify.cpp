#include "doco/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace doco {

std::string to_string(BitFamily family) {
  switch (family) {
    case BitFamily::kRademacher: return "rademacher";
    case BitFamily::kBiased30: return "biased-0.3";
    case BitFamily::kBiased70: return "biased-0.7";
    case BitFamily::kAntiPredictor: return "anti-predictor";
  }
  throw std::invalid_argument("unknown BitFamily");
}

const std::vector<BitFamily>& all_bit_families() {
  static const std::vector<BitFamily> families = {
      BitFamily::kRademacher, BitFamily::kBiased30, BitFamily::kBiased70,
      BitFamily::kAntiPredictor};
  return families;
}

double draw_bit(BitFamily family, Rng& rng, double prediction) {
  switch (family) {
    case BitFamily::kRademacher: return rng.bernoulli(0.5) ? 1.0 : -1.0;
    case BitFamily::kBiased30: return rng.bernoulli(0.3) ? 1.0 : -1.0;
    case BitFamily::kBiased70: return rng.bernoulli(0.7) ? 1.0 : -1.0;
    case BitFamily::kAntiPredictor:
      // punish positive confidence; pump the deviation whenever the
      // prediction is zero, which is where the payoff bound is tightest
      return prediction > 0.0 ? -1.0 : 1.0;
  }
  throw std::invalid_argument("unknown BitFamily");
}

namespace {

std::vector<double> with_default_etas(double rho, const std::vector<double>& extra) {
  std::vector<double> etas = {rho, 0.5 * (1.0 + rho)};
  for (double e : extra) etas.push_back(e);
  return etas;
}

}  // namespace

PayoffCellResult run_payoff_cell(double n, double Z, BitFamily family, int runs,
                                 int horizon, const std::vector<double>& extra_etas,
                                 std::uint64_t seed) {
  if (runs < 1 || horizon < 1)
    throw std::invalid_argument("run_payoff_cell: empty corpus");
  const ConfidenceParams params(n, Z);
  const double U = params.threshold();
  const double rho = 1.0 - 1.0 / n;

  PayoffCellResult cell;
  cell.n = n;
  cell.Z = Z;
  cell.family = family;
  cell.runs = runs;
  cell.horizon = horizon;
  cell.etas = with_default_etas(rho, extra_etas);
  const std::size_t n_etas = cell.etas.size();
  cell.payoff_min.assign(n_etas, std::numeric_limits<double>::infinity());
  double tracking_min = std::numeric_limits<double>::infinity();
  double dev_low = std::numeric_limits<double>::infinity();
  double dev_high = std::numeric_limits<double>::infinity();
  double step_min = std::numeric_limits<double>::infinity();
  double sign_min = std::numeric_limits<double>::infinity();
  double gain_min = std::numeric_limits<double>::infinity();
  long long mismatches = 0;

  Rng rng(seed);
  std::vector<double> bits(horizon), gb(horizon), transformed(horizon);
  for (int run = 0; run < runs; ++run) {
    DnpPredictor state(params, UpdateRule::kConservative);
    double bit_sum = 0.0;  // sum rho^{T-t} b_t, Horner
    for (int t = 0; t < horizon; ++t) {
      const double pred = state.predict();
      const double b = draw_bit(family, rng, pred);
      const bool accepted = state.accepts(b);
      bits[t] = b;
      gb[t] = pred * b;
      transformed[t] = accepted ? b : 0.0;
      if (!accepted && b != 0.0) {
        sign_min = std::min(sign_min, pred * b);
        gain_min = std::min(gain_min, pred * b - b);
      }
      const double x_before = state.deviation();
      state = state.updated(b);
      const double x = state.deviation();
      dev_low = std::min(dev_low, x + 1.0);
      dev_high = std::min(dev_high, U + 1.0 - x);
      step_min = std::min(step_min, 2.0 - std::abs(x - x_before));
      bit_sum = rho * bit_sum + b;
    }
    for (std::size_t k = 0; k < n_etas; ++k) {
      const double eta = cell.etas[k];
      double payoff = 0.0;
      for (int t = 0; t < horizon; ++t) payoff = eta * payoff + gb[t];
      cell.payoff_min[k] =
          std::min(cell.payoff_min[k], payoff + Z / (2.0 * (1.0 - eta)));
    }
    {
      double payoff_rho = 0.0;
      for (int t = 0; t < horizon; ++t) payoff_rho = rho * payoff_rho + gb[t];
      tracking_min = std::min(
          tracking_min, payoff_rho - (bit_sum - Z / (2.0 * (1.0 - rho)) - U - 1.0));
    }
    // plain rule on the transformed bits must replay the exact trajectory
    {
      DnpPredictor plain(params, UpdateRule::kPlain);
      DnpPredictor cons(params, UpdateRule::kConservative);
      for (int t = 0; t < horizon; ++t) {
        if (plain.deviation() != cons.deviation() ||
            plain.predict() != cons.predict())
          ++mismatches;
        plain = plain.updated(transformed[t]);
        cons = cons.updated(bits[t]);
      }
      if (plain.deviation() != cons.deviation()) ++mismatches;
    }
  }

  cell.tracking_min = tracking_min;
  cell.deviation_low_min = dev_low;
  cell.deviation_high_min = dev_high;
  cell.step_min = step_min;
  cell.conditional_sign_min = sign_min;
  cell.conditional_gain_min = gain_min;
  cell.transform_mismatches = mismatches;
  return cell;
}

PotentialCellResult run_potential_cell(double n, double Z, BitFamily family,
                                       int runs, int horizon,
                                       const std::vector<double>& extra_etas,
                                       std::uint64_t seed) {
  if (runs < 1 || horizon < 1)
    throw std::invalid_argument("run_potential_cell: empty corpus");
  const ConfidenceParams params(n, Z);
  const double rho = 1.0 - 1.0 / n;

  PotentialCellResult cell;
  cell.n = n;
  cell.Z = Z;
  cell.family = family;
  cell.runs = runs;
  cell.horizon = horizon;
  cell.etas = with_default_etas(rho, extra_etas);
  cell.lower_min.assign(cell.etas.size(), std::numeric_limits<double>::infinity());
  double tracking_min = std::numeric_limits<double>::infinity();

  Rng rng(seed);
  std::vector<double> bits(horizon), gb(horizon), aux(horizon);
  for (int run = 0; run < runs; ++run) {
    DnpPredictor state(params, UpdateRule::kPlain);
    for (int t = 0; t < horizon; ++t) {
      const double x = state.deviation();
      const double pred = state.predict();
      const double b = draw_bit(family, rng, pred);
      bits[t] = b;
      gb[t] = pred * b;
      aux[t] = (x * pred / 2.0 - potential_phi(x, params)) / n;
      state = state.updated(b);
    }
    const double x_final = state.deviation();
    for (std::size_t k = 0; k < cell.etas.size(); ++k) {
      const double eta = cell.etas[k];
      double payoff = 0.0, aux_sum = 0.0;
      for (int t = 0; t < horizon; ++t) {
        payoff = eta * payoff + gb[t];
        aux_sum = eta * aux_sum + aux[t];
      }
      cell.lower_min[k] = std::min(cell.lower_min[k],
                                   payoff - (aux_sum - Z / (2.0 * (1.0 - eta))));
    }
    {
      double payoff = 0.0, aux_sum = 0.0, bit_sum = 0.0;
      for (int t = 0; t < horizon; ++t) {
        payoff = rho * payoff + gb[t];
        aux_sum = rho * aux_sum + aux[t];
        bit_sum = rho * bit_sum + bits[t];
      }
      tracking_min = std::min(
          tracking_min,
          payoff - (bit_sum + aux_sum - Z / (2.0 * (1.0 - rho)) - x_final));
    }
  }
  cell.tracking_min = tracking_min;
  return cell;
}

PotentialBoundResult check_potential_bound(double n, double Z, int grid_points) {
  if (grid_points < 2)
    throw std::invalid_argument("check_potential_bound: need >= 2 grid points");
  const ConfidenceParams params(n, Z);
  const double U = params.threshold();
  PotentialBoundResult result;
  result.n = n;
  result.Z = Z;
  result.grid_points = grid_points;
  double min_margin = std::numeric_limits<double>::infinity();
  const double lo = -1.0;
  const double hi = U + 1.0;
  for (int k = 0; k < grid_points; ++k) {
    const double x = lo + (hi - lo) * k / (grid_points - 1);
    const double margin = x * g(x, params) / 2.0 - potential_phi(x, params);
    min_margin = std::min(min_margin, margin);
  }
  result.min_margin = min_margin;
  return result;
}

double geometric_margin(double n, double Z) {
  const ConfidenceParams params(n, Z);
  const double U = params.threshold();
  const double c = U - 8.0;
  return c - U * g(c, params) - 1.0;
}

double convexity_margin(double n, double Z, int grid_points) {
  if (grid_points < 3)
    throw std::invalid_argument("convexity_margin: need >= 3 grid points");
  const ConfidenceParams params(n, Z);
  const double U = params.threshold();
  const double h = U / (grid_points - 1);
  double min_d2 = std::numeric_limits<double>::infinity();
  double prev2 = g(0.0, params);
  double prev1 = g(h, params);
  for (int k = 2; k < grid_points; ++k) {
    const double cur = g(k * h, params);
    min_d2 = std::min(min_d2, cur - 2.0 * prev1 + prev2);
    prev2 = prev1;
    prev1 = cur;
  }
  return min_d2;
}

}  // namespace doco
