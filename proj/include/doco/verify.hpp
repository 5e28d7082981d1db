#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "doco/confidence.hpp"
#include "doco/dnp.hpp"
#include "doco/rng.hpp"

namespace doco {

enum class BitFamily {
  kRademacher,     // fair +-1
  kBiased30,       // +1 with probability 0.3
  kBiased70,       // +1 with probability 0.7
  kAntiPredictor,  // -1 whenever the prediction is positive, else +1
};

std::string to_string(BitFamily family);
const std::vector<BitFamily>& all_bit_families();

// One bit for the family given the current prediction (iid families ignore it).
double draw_bit(BitFamily family, Rng& rng, double prediction);

// Discounted payoff corpus for one (n, Z, family) cell, conservative rule.
// Margins are "observed minus guaranteed": nonnegative means the bound holds.
struct PayoffCellResult {
  double n = 0.0;
  double Z = 0.0;
  BitFamily family = BitFamily::kRademacher;
  int runs = 0;
  int horizon = 0;
  std::vector<double> etas;
  std::vector<double> payoff_min;    // per eta: payoff + Z/(2(1-eta))
  double tracking_min = 0.0;         // payoff_rho - (sum rho^{T-t} b - Z/(2(1-rho)) - U - 1)
  double deviation_low_min = 0.0;    // min of x + 1
  double deviation_high_min = 0.0;   // min of U + 1 - x
  double step_min = 0.0;             // min of 2 - |x_{t+1} - x_t|
  double conditional_sign_min = 0.0; // min of g(x)(b - b~) where b != b~
  double conditional_gain_min = 0.0; // min of g(x)(b - b~) - (b - b~) where b != b~
  long long transform_mismatches = 0;
};

// etas beyond {rho, (1+rho)/2} may be supplied; rho and the midpoint are
// always included first.
PayoffCellResult run_payoff_cell(double n, double Z, BitFamily family, int runs,
                                 int horizon, const std::vector<double>& extra_etas,
                                 std::uint64_t seed);

// Potential-augmented payoff bounds for the plain rule, the quadrature-limited
// counterpart of the conservative cell.
struct PotentialCellResult {
  double n = 0.0;
  double Z = 0.0;
  BitFamily family = BitFamily::kRademacher;
  int runs = 0;
  int horizon = 0;
  std::vector<double> etas;
  std::vector<double> lower_min;  // per eta
  double tracking_min = 0.0;
};

PotentialCellResult run_potential_cell(double n, double Z, BitFamily family,
                                       int runs, int horizon,
                                       const std::vector<double>& extra_etas,
                                       std::uint64_t seed);

// min over an even grid on [-1, U+1] of x g(x)/2 - Phi(x).
struct PotentialBoundResult {
  double n = 0.0;
  double Z = 0.0;
  int grid_points = 0;
  double min_margin = 0.0;
};

PotentialBoundResult check_potential_bound(double n, double Z, int grid_points);

// c - U(n) g(c) - 1 at c = U(n) - 8 (nonnegative on qualifying cells).
double geometric_margin(double n, double Z);

// min over a grid on [0, U] of the discrete second difference of g
// (convexity check).
double convexity_margin(double n, double Z, int grid_points);

}  // namespace doco
