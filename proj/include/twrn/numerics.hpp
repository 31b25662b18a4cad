#pragma once

#include <functional>
#include <utility>

namespace twrn {

struct QuadratureResult {
  double value = 0;
  double abs_error_estimate = 0;
  long evaluations = 0;
};

/// Integrates f over (0, inf) with a double-exponential (exp-sinh) rule.
///
/// f must be continuous, non-negative and integrable with an exponentially
/// decaying tail; 0 is treated as a removable endpoint with f(0) == 0.
/// Stops when successive refinement levels agree to rel_tol (plus a 1e-15
/// absolute floor). Throws NumericalError carrying the partial estimate if
/// the evaluation budget is exhausted first.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         double rel_tol = 1e-9);

/// Golden-section search for a local maximizer of f on [lo, hi].
///
/// Returns (x*, f(x*)) with x* within tol of a local maximizer. Never
/// evaluates f outside [lo, hi]. On plateaus the bracket shrinks from both
/// ends, so a constant f yields the midpoint of [lo, hi].
std::pair<double, double> golden_section_max(const std::function<double(double)>& f,
                                             double lo, double hi, double tol);

}  // namespace twrn
