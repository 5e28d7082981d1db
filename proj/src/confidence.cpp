#include "doco/confidence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace doco {
namespace {

constexpr double kSqrtHalfPi = 1.2533141373155003;  // sqrt(pi/2)
constexpr double kMaxExpArg = 709.0;                // exp overflows above this

// Adaptive Simpson with the standard (S_left + S_right - S)/15 error
// estimate.
inline double simpson(double fa, double fc, double fb, double h) {
  return (fa + 4.0 * fc + fb) * h / 6.0;
}

template <typename F>
double adaptive_simpson(F&& f, double a, double c, double b, double fa, double fc,
                        double fb, double whole, double eps, int depth) {
  const double lm = 0.5 * (a + c);
  const double rm = 0.5 * (c + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fc, c - a);
  const double right = simpson(fc, frm, fb, b - c);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15.0 * eps) return left + right + err / 15.0;
  return adaptive_simpson(f, a, lm, c, fa, flm, fc, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, c, rm, b, fc, frm, fb, right, 0.5 * eps, depth - 1);
}

template <typename F>
double integrate(F&& f, double a, double b, double eps) {
  if (!(b > a)) return 0.0;
  const double c = 0.5 * (a + b);
  const double fa = f(a);
  const double fc = f(c);
  const double fb = f(b);
  const double whole = simpson(fa, fc, fb, b - a);
  return adaptive_simpson(f, a, c, b, fa, fc, fb, whole, eps, 48);
}

}  // namespace

double erf_halfgauss(double x) {
  // int_0^x e^{-s^2/2} ds = sqrt(pi/2) * erf(x/sqrt(2))
  return kSqrtHalfPi * std::erf(x * M_SQRT1_2);
}

ConfidenceParams::ConfidenceParams(double n, double Z) : n_(n), Z_(Z) {
  if (!(n > 0.0)) throw std::invalid_argument("ConfidenceParams: n must be positive");
  if (!(Z > 0.0) || Z > 1.0 / M_E + 1e-15)
    throw std::invalid_argument("ConfidenceParams: Z must lie in (0, 1/e]");

  // Bisect g_tilde(u) = 1 on [0, B], B = sqrt(16 n log(1/Z)); the payoff
  // analysis guarantees the root falls below B whenever its hypotheses hold.
  const double bracket = std::sqrt(16.0 * n_ * std::log(1.0 / Z_));
  if (g_tilde(bracket, *this) < 1.0) return;  // threshold left unset
  double lo = 0.0;
  double hi = bracket;
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    if (g_tilde(mid, *this) < 1.0)
      lo = mid;
    else
      hi = mid;
  }
  threshold_ = 0.5 * (lo + hi);
}

double ConfidenceParams::threshold() const {
  if (!threshold_)
    throw std::runtime_error(
        "ConfidenceParams: g_tilde stays below 1 on the bisection bracket "
        "(inconsistent n/Z)");
  return *threshold_;
}

bool ConfidenceParams::meets_payoff_hypotheses() const {
  if (Z_ > 1.0 / M_E + 1e-15) return false;
  if (n_ < std::max(8.0 * M_E, 16.0 * std::log(1.0 / Z_))) return false;
  return threshold_ && *threshold_ >= 22.0;
}

double g_tilde(double x, const ConfidenceParams& p) {
  const double amplitude =
      std::sqrt(p.n() / 8.0) * p.Z() * erf_halfgauss(x / std::sqrt(8.0 * p.n()));
  const double arg = x * x / (16.0 * p.n());
  if (arg > kMaxExpArg) {
    if (amplitude > 0.0) return std::numeric_limits<double>::infinity();
    if (amplitude < 0.0) return -std::numeric_limits<double>::infinity();
    return 0.0;
  }
  return amplitude * std::exp(arg);
}

double g(double x, const ConfidenceParams& p) {
  if (x <= 0.0) return 0.0;
  if (p.has_threshold() && x >= p.threshold()) return 1.0;
  const double v = g_tilde(x, p);
  if (v <= 0.0) return 0.0;
  return v >= 1.0 ? 1.0 : v;
}

double threshold_U(const ConfidenceParams& p) { return p.threshold(); }

double potential_phi(double x, const ConfidenceParams& p) {
  if (x <= 0.0) return 0.0;
  const auto integrand = [&p](double s) { return g(s, p); };
  if (p.has_threshold() && x > p.threshold()) {
    const double u = p.threshold();
    return integrate(integrand, 0.0, u, 1e-10) + (x - u);
  }
  return integrate(integrand, 0.0, x, 1e-10);
}

}  // namespace doco
