#pragma once

#include "twrn/channel.hpp"
#include "twrn/config.hpp"
#include "twrn/markov.hpp"

namespace twrn {

/// joules_per_bit divides energies by the bandwidth (slot duration
/// L/(R*B) seconds); paper_normalized treats B as 1 so energies come out in
/// normalized power per (bits/sec/Hz).
enum class EnergyUnits { joules_per_bit, paper_normalized };

enum class EbVariant { paper, renewal };

/// One analytic operating point.
struct PerformancePoint {
  Mode mode = Mode::af;
  double rate = 0;             ///< R, bits/sec/Hz
  double goodput = 0;          ///< eta, bits/sec/Hz
  double normalized_rate = 0;  ///< eta / R
  double eb_paper = 0;         ///< published-formula bit energy
  double eb_renewal = 0;       ///< renewal-reward bit energy (== eb_paper in AF)
  AfOutagePair af_outage{};    ///< valid when mode == af
  DfOutageProfile df_outage{};  ///< valid when mode == df
};

/// Expected per-state refill energies of the DF protocol (geometric polling
/// cost until the buffer reaches S3), in joules (or normalized units).
struct StageEnergies {
  double e_s0 = 0;
  double e_s1 = 0;
  double e_s2 = 0;
  double e_s3 = 0;
};

double goodput_af(double rate, const AfOutagePair& p);

double eb_af(const NetworkConfig& cfg, double rate, const AfOutagePair& p,
             EnergyUnits units = EnergyUnits::joules_per_bit);

/// eta_DF = pi(S3) * R * (2 - pr1 - pr2); callable with either the
/// chain-solved or the closed-form stationary distribution.
double goodput_df(double rate, const DfOutageProfile& p,
                  const StationaryDistribution& pi);

StageEnergies stage_energy_df(const NetworkConfig& cfg, double rate,
                              const DfOutageProfile& p,
                              EnergyUnits units = EnergyUnits::joules_per_bit);

/// Published DF bit-energy formula: stage energies weighted by the
/// closed-form slot-stationary probabilities.
double eb_df_paper(const NetworkConfig& cfg, double rate, const DfOutageProfile& p,
                   const StationaryDistribution& pi_paper,
                   EnergyUnits units = EnergyUnits::joules_per_bit);

/// Renewal-reward DF bit energy: stage energies weighted by the S3-exit
/// distribution. Cycles between consecutive broadcasts are i.i.d., so this
/// is the exact long-run energy per delivered bit; the simulator arbitrates
/// between this and eb_df_paper.
double eb_df_renewal(const NetworkConfig& cfg, double rate,
                     const DfOutageProfile& p,
                     EnergyUnits units = EnergyUnits::joules_per_bit);

double normalized_rate(double goodput, double rate);

/// Full analytic evaluation of one (config, rate) operating point.
PerformancePoint af_point(const NetworkConfig& cfg, const DerivedParams& params,
                          double rate,
                          EnergyUnits units = EnergyUnits::joules_per_bit);
PerformancePoint df_point(const NetworkConfig& cfg, const DerivedParams& params,
                          double rate,
                          EnergyUnits units = EnergyUnits::joules_per_bit);

}  // namespace twrn
