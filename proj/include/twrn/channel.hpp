#pragma once

#include <cmath>
#include <numbers>

#include "twrn/config.hpp"
#include "twrn/rng.hpp"

namespace twrn {

/// Outage threshold 2^R - 1 on the post-processing SNR, accurate at small R.
inline double rate_threshold(double rate) {
  return std::expm1(rate * std::numbers::ln2);
}

/// Instantaneous channel power gains |h|^2 for one fading block.
/// Under sampling, each gain is exponential with mean sigma1_sq (T1-relay
/// directions) or sigma2_sq (T2-relay directions). Reciprocity is
/// distributional only: the four gains are drawn independently.
struct ChannelDraw {
  double g1r = 0;  ///< T1 -> relay
  double g2r = 0;  ///< T2 -> relay
  double gr1 = 0;  ///< relay -> T1
  double gr2 = 0;  ///< relay -> T2
};

/// Cascade-link outage probabilities in AF mode.
struct AfOutagePair {
  double p12 = 0;  ///< outage on the T1 -> T2 cascade
  double p21 = 0;  ///< outage on the T2 -> T1 cascade
};

/// Per-link outage probabilities in DF mode.
struct DfOutageProfile {
  double p1r = 0;  ///< T1 -> relay
  double p2r = 0;  ///< T2 -> relay
  double pr1 = 0;  ///< relay -> T1
  double pr2 = 0;  ///< relay -> T2
};

struct AfRates {
  double r12 = 0;  ///< cascade instantaneous rate T1 -> T2, bits/sec/Hz
  double r21 = 0;  ///< cascade instantaneous rate T2 -> T1, bits/sec/Hz
};

/// Draws four independent exponential gains with means
/// (sigma1_sq, sigma2_sq, sigma1_sq, sigma2_sq), in field order.
ChannelDraw sample_channel_draw(const DerivedParams& params, CounterRng& rng);

/// Instantaneous cascade rates of the amplify-and-forward round.
AfRates af_instantaneous_rates(const ChannelDraw& draw, const NetworkConfig& cfg,
                               const DerivedParams& params);

/// CDF of X = Y1*Y2 / (a + Y2) at x, where Y1, Y2 are independent
/// exponentials with means mu1, mu2 and a >= 0 is a constant:
///
///   F_X(x) = 1 - (1/mu2) * Int_0^inf exp(-x(a+z)/(mu1 z) - z/mu2) dz
///
/// evaluated by semi-infinite quadrature and clamped to [0, 1].
double cascade_cdf(double x, double a, double mu1, double mu2,
                   double rel_tol = 1e-9);

/// Cascade outage probabilities at rate R: F_X evaluated at the threshold
/// (2^R - 1) * sigma_n^2 / P with a = 1/beta^2. The T1->T2 direction pairs
/// (mu1, mu2) = (sigma1_sq, sigma2_sq); the reverse direction swaps them.
AfOutagePair af_outage_pair(const NetworkConfig& cfg, const DerivedParams& params,
                            double rate);

/// Per-link Rayleigh outage probabilities at rate R. Relay links carry the
/// factor 2 from the equal power split of the broadcast codeword.
DfOutageProfile df_outage_profile(const NetworkConfig& cfg,
                                  const DerivedParams& params, double rate);

}  // namespace twrn
