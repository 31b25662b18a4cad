#include "twrn/metrics.hpp"

#include <cmath>
#include <limits>

#include "twrn/errors.hpp"

namespace twrn {

namespace {

double effective_bandwidth(const NetworkConfig& cfg, EnergyUnits units) {
  return units == EnergyUnits::paper_normalized ? 1.0 : cfg.bandwidth_hz;
}

}  // namespace

double goodput_af(double rate, const AfOutagePair& p) {
  return rate * (2.0 - p.p12 - p.p21) / 2.0;
}

double eb_af(const NetworkConfig& cfg, double rate, const AfOutagePair& p,
             EnergyUnits units) {
  if (!(rate > 0.0)) throw DegenerateError("eb_af: rate must be > 0");
  const double denom = 2.0 - p.p12 - p.p21;
  if (denom <= 0.0)
    throw DegenerateError("eb_af: both cascades are in permanent outage (infinite energy)");
  return (cfg.p1 + cfg.p2 + cfg.pr) / (denom * rate * effective_bandwidth(cfg, units));
}

double goodput_df(double rate, const DfOutageProfile& p, const StationaryDistribution& pi) {
  if (pi.mode != Mode::df || pi.pi.size() != 4)
    throw Error("goodput_df: stationary distribution is not over the DF states");
  return pi.pi[3] * rate * (2.0 - p.pr1 - p.pr2);
}

StageEnergies stage_energy_df(const NetworkConfig& cfg, double rate,
                              const DfOutageProfile& p, EnergyUnits units) {
  if (!(rate > 0.0)) throw DegenerateError("stage_energy_df: rate must be > 0");
  if (p.p1r >= 1.0 || p.p2r >= 1.0)
    throw DegenerateError("stage_energy_df: a polling link is in permanent outage "
                          "(infinite refill energy)");
  const double rb = rate * effective_bandwidth(cfg, units);
  const double bits = static_cast<double>(cfg.codeword_bits);
  StageEnergies e;
  e.e_s1 = cfg.p2 * bits / ((1.0 - p.p2r) * rb);
  e.e_s2 = cfg.p1 * bits / ((1.0 - p.p1r) * rb);
  e.e_s0 = e.e_s1 + e.e_s2;
  e.e_s3 = 0.0;
  return e;
}

namespace {

double eb_df_weighted(const NetworkConfig& cfg, double rate, const DfOutageProfile& p,
                      double w0, double w1, double w2, EnergyUnits units) {
  const double denom = 2.0 - p.pr1 - p.pr2;
  if (denom <= 0.0)
    throw DegenerateError("eb_df: both broadcast links are in permanent outage "
                          "(infinite energy)");
  const StageEnergies e = stage_energy_df(cfg, rate, p, units);
  const double rb = rate * effective_bandwidth(cfg, units);
  const double bits = static_cast<double>(cfg.codeword_bits);
  const double broadcast = cfg.pr * bits / rb;
  return (w0 * e.e_s0 + w1 * e.e_s1 + w2 * e.e_s2 + broadcast) / (denom * bits);
}

}  // namespace

double eb_df_paper(const NetworkConfig& cfg, double rate, const DfOutageProfile& p,
                   const StationaryDistribution& pi_paper, EnergyUnits units) {
  if (pi_paper.mode != Mode::df || pi_paper.pi.size() != 4)
    throw Error("eb_df_paper: stationary distribution is not over the DF states");
  return eb_df_weighted(cfg, rate, p, pi_paper.pi[0], pi_paper.pi[1], pi_paper.pi[2],
                        units);
}

double eb_df_renewal(const NetworkConfig& cfg, double rate, const DfOutageProfile& p,
                     EnergyUnits units) {
  // Weights are the S3-exit probabilities: each broadcast outcome starts one
  // i.i.d. refill cycle.
  const double q0 = (1.0 - p.pr1) * (1.0 - p.pr2);
  const double q1 = (1.0 - p.pr1) * p.pr2;
  const double q2 = p.pr1 * (1.0 - p.pr2);
  return eb_df_weighted(cfg, rate, p, q0, q1, q2, units);
}

double normalized_rate(double goodput, double rate) {
  if (!(rate > 0.0)) throw DegenerateError("normalized_rate: rate must be > 0");
  return goodput / rate;
}

// The point aggregates report the exact limit values (zero goodput, infinite
// energy) where an operating point is degenerate at double resolution, e.g.
// an outage probability that rounds to 1; the underlying operations keep
// their error contracts.
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

PerformancePoint af_point(const NetworkConfig& cfg, const DerivedParams& params,
                          double rate, EnergyUnits units) {
  PerformancePoint pt;
  pt.mode = Mode::af;
  pt.rate = rate;
  pt.af_outage = af_outage_pair(cfg, params, rate);
  pt.goodput = goodput_af(rate, pt.af_outage);
  pt.normalized_rate = normalized_rate(pt.goodput, rate);
  try {
    pt.eb_paper = eb_af(cfg, rate, pt.af_outage, units);
  } catch (const DegenerateError&) {
    pt.eb_paper = kInf;
  }
  pt.eb_renewal = pt.eb_paper;
  return pt;
}

PerformancePoint df_point(const NetworkConfig& cfg, const DerivedParams& params,
                          double rate, EnergyUnits units) {
  PerformancePoint pt;
  pt.mode = Mode::df;
  pt.rate = rate;
  pt.df_outage = df_outage_profile(cfg, params, rate);
  try {
    const StationaryDistribution pi = stationary(build_df_chain(pt.df_outage));
    pt.goodput = goodput_df(rate, pt.df_outage, pi);
  } catch (const DegenerateError&) {
    pt.goodput = 0.0;  // a polling or broadcast link is dead; nothing flows
  }
  pt.normalized_rate = normalized_rate(pt.goodput, rate);
  try {
    pt.eb_paper =
        eb_df_paper(cfg, rate, pt.df_outage, df_stationary_paper(pt.df_outage), units);
  } catch (const DegenerateError&) {
    pt.eb_paper = kInf;
  }
  try {
    pt.eb_renewal = eb_df_renewal(cfg, rate, pt.df_outage, units);
  } catch (const DegenerateError&) {
    pt.eb_renewal = kInf;
  }
  return pt;
}

}  // namespace twrn
