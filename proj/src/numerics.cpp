#include "twrn/numerics.hpp"

#include <cmath>
#include <limits>

#include "twrn/errors.hpp"

namespace twrn {

namespace {

constexpr double kAbsFloor = 1e-15;
constexpr long kMaxEvaluations = 400000;

// Largest |t| for which z = exp(pi/2 * sinh(t)) stays inside double range.
constexpr double kTMax = 6.8;

struct ExpSinhMap {
  // z(t) and the full weight z'(t) of the exp-sinh substitution.
  static double node(double t) { return std::exp(1.5707963267948966 * std::sinh(t)); }
  static double weight(double t, double z) {
    return z * 1.5707963267948966 * std::cosh(t);
  }
};

}  // namespace

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         double rel_tol) {
  if (!(rel_tol > 0.0) || rel_tol > 1e-2)
    throw Error("integrate_semi_infinite: rel_tol must lie in (0, 1e-2]");

  long evals = 0;
  auto term = [&](double t) -> double {
    const double z = ExpSinhMap::node(t);
    ++evals;
    if (z == 0.0 || !std::isfinite(z)) return 0.0;  // removable endpoints
    const double fz = f(z);
    if (!std::isfinite(fz))
      throw NumericalError("integrate_semi_infinite: integrand returned a non-finite value",
                           0.0, std::numeric_limits<double>::infinity(), evals);
    return fz * ExpSinhMap::weight(t, z);
  };

  // Trapezoidal sums over the transformed axis, halving the step each level.
  // Outward summation stops once terms are negligible against the running sum.
  const double trunc_eps = rel_tol * 1e-3;
  auto sum_row = [&](double h, double t0, double stride) -> double {
    // Sums term(t0 + k*stride*h) for k = 0, 1, 2, ... in both directions
    // starting from t0 (one direction per call sign of stride).
    double sum = 0.0;
    int consecutive_small = 0;
    for (double t = t0; std::abs(t) <= kTMax; t += stride * h) {
      const double v = term(t);
      sum += v;
      // Truncate only after some mass has accumulated, so an integrand that
      // underflows near z = 1 but peaks farther out is still captured.
      if (sum != 0.0 && std::abs(v) <= trunc_eps * std::abs(sum)) {
        if (++consecutive_small >= 2) break;
      } else {
        consecutive_small = 0;
      }
      if (evals > kMaxEvaluations) break;
    }
    return sum;
  };

  double h = 1.0;
  // Level 0: nodes at every integer multiple of h.
  double total = sum_row(h, 0.0, 1.0) + sum_row(h, -h, -1.0);
  double estimate = h * total;
  double prev = estimate;
  double err = std::abs(estimate);

  for (int level = 1; level <= 14; ++level) {
    h *= 0.5;
    // New nodes at odd multiples of the refined step.
    const double odd = sum_row(2.0 * h, h, 1.0) + sum_row(2.0 * h, -h, -1.0);
    if (evals > kMaxEvaluations) break;  // row may be incomplete; keep prev
    total += odd;
    estimate = h * total;
    err = std::abs(estimate - prev);
    if (level >= 2 && err <= rel_tol * std::abs(estimate) + kAbsFloor)
      return {estimate, err, evals};
    prev = estimate;
  }

  throw NumericalError("integrate_semi_infinite: no convergence within the evaluation budget",
                       prev, err, evals);
}

std::pair<double, double> golden_section_max(const std::function<double(double)>& f,
                                             double lo, double hi, double tol) {
  if (!(lo < hi)) throw Error("golden_section_max: requires lo < hi");
  if (!(tol > 0.0)) throw Error("golden_section_max: requires tol > 0");

  const double invphi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double a = lo, b = hi;
  double c = b - (b - a) * invphi;
  double d = a + (b - a) * invphi;
  double fc = f(c);
  double fd = f(d);

  for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * invphi;
      fc = f(c);
    } else if (fd > fc) {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * invphi;
      fd = f(d);
    } else {
      // Plateau: shrink symmetrically so a constant objective resolves to
      // the midpoint of the original bracket.
      a = c;
      b = d;
      c = b - (b - a) * invphi;
      d = a + (b - a) * invphi;
      fc = f(c);
      fd = f(d);
    }
  }

  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace twrn
