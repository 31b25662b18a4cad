// Test-only oracles, independent of the library code paths they check.
#pragma once

#include <cmath>

namespace twrn_test {

// Closed form of the cascade CDF via the modified Bessel function:
//   Int_0^inf exp(-b/z - z/c) dz = 2*sqrt(b*c)*K1(2*sqrt(b/c))
// applied to F(x) = 1 - (1/mu2) * Int exp(-x(a+z)/(mu1 z) - z/mu2) dz gives,
// with u = 2*sqrt(x*a/(mu1*mu2)),
//   F(x) = 1 - exp(-x/mu1) * u * K1(u).
inline double cascade_cdf_bessel(double x, double a, double mu1, double mu2) {
  if (x == 0.0) return 0.0;
  const double u = 2.0 * std::sqrt(x * a / (mu1 * mu2));
  if (u == 0.0) return 1.0 - std::exp(-x / mu1);
  const double tail = std::exp(-x / mu1) * u * std::cyl_bessel_k(1.0, u);
  const double f = 1.0 - tail;
  return f < 0.0 ? 0.0 : (f > 1.0 ? 1.0 : f);
}

}  // namespace twrn_test
