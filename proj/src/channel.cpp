#include "twrn/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "twrn/errors.hpp"
#include "twrn/numerics.hpp"

namespace twrn {

ChannelDraw sample_channel_draw(const DerivedParams& params, CounterRng& rng) {
  ChannelDraw d;
  d.g1r = rng.next_exponential(params.sigma1_sq);
  d.g2r = rng.next_exponential(params.sigma2_sq);
  d.gr1 = rng.next_exponential(params.sigma1_sq);
  d.gr2 = rng.next_exponential(params.sigma2_sq);
  return d;
}

AfRates af_instantaneous_rates(const ChannelDraw& draw, const NetworkConfig& cfg,
                               const DerivedParams& params) {
  const double b2 = params.beta * params.beta;
  AfRates r;
  r.r12 = std::log2(1.0 + b2 * draw.gr2 * draw.g1r * cfg.p1 /
                              ((1.0 + b2 * draw.gr2) * cfg.noise_power));
  r.r21 = std::log2(1.0 + b2 * draw.gr1 * draw.g2r * cfg.p2 /
                              ((1.0 + b2 * draw.gr1) * cfg.noise_power));
  return r;
}

double cascade_cdf(double x, double a, double mu1, double mu2, double rel_tol) {
  if (!(x >= 0.0)) throw Error("cascade_cdf: x must be >= 0");
  if (!(a >= 0.0)) throw Error("cascade_cdf: a must be >= 0");
  if (!(mu1 > 0.0) || !(mu2 > 0.0)) throw Error("cascade_cdf: mu1, mu2 must be > 0");
  if (x == 0.0) return 0.0;

  double integral;  // of exp(-x(a+z)/(mu1 z) - z/mu2) over (0, inf)
  const double b = x * a / mu1;
  if (b == 0.0) {
    // a = 0: the integrand reduces to exp(-x/mu1) * exp(-z/mu2).
    const auto q =
        integrate_semi_infinite([&](double z) { return std::exp(-z / mu2); }, rel_tol);
    integral = std::exp(-x / mu1) * q.value;
  } else {
    // Substituting z = sqrt(b*mu2) * w centers the integrand's peak at w = 1:
    //   integral = exp(-x/mu1) * s * Int exp(-(u/2)(w + 1/w)) dw,
    // with s = sqrt(b*mu2) and u = 2*sqrt(b/mu2).
    const double s = std::sqrt(b * mu2);
    const double u = 2.0 * std::sqrt(b / mu2);
    const auto q = integrate_semi_infinite(
        [&](double w) { return std::exp(-0.5 * u * (w + 1.0 / w)); }, rel_tol);
    integral = std::exp(-x / mu1) * s * q.value;
  }
  return std::clamp(1.0 - integral / mu2, 0.0, 1.0);
}

AfOutagePair af_outage_pair(const NetworkConfig& cfg, const DerivedParams& params,
                            double rate) {
  if (!(rate >= 0.0)) throw Error("af_outage_pair: rate must be >= 0");
  if (rate == 0.0) return {0.0, 0.0};
  const double a = 1.0 / (params.beta * params.beta);
  const double t = rate_threshold(rate);
  AfOutagePair p;
  p.p12 = cascade_cdf(t * cfg.noise_power / cfg.p1, a, params.sigma1_sq, params.sigma2_sq);
  p.p21 = cascade_cdf(t * cfg.noise_power / cfg.p2, a, params.sigma2_sq, params.sigma1_sq);
  return p;
}

DfOutageProfile df_outage_profile(const NetworkConfig& cfg, const DerivedParams& params,
                                  double rate) {
  if (!(rate >= 0.0)) throw Error("df_outage_profile: rate must be >= 0");
  const double t = rate_threshold(rate);
  const double n = cfg.noise_power;
  DfOutageProfile p;
  p.p1r = -std::expm1(-t * n / (params.sigma1_sq * cfg.p1));
  p.p2r = -std::expm1(-t * n / (params.sigma2_sq * cfg.p2));
  // The relay splits its power equally between the two combined codewords.
  p.pr1 = -std::expm1(-t * 2.0 * n / (params.sigma1_sq * cfg.pr));
  p.pr2 = -std::expm1(-t * 2.0 * n / (params.sigma2_sq * cfg.pr));
  return p;
}

}  // namespace twrn
