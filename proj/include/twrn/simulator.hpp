#pragma once

#include <cstdint>
#include <vector>

#include "twrn/config.hpp"
#include "twrn/markov.hpp"

namespace twrn {

/// Attempt/failure tally for one link's outage estimate.
struct LinkTally {
  std::uint64_t attempts = 0;
  std::uint64_t failures = 0;

  double frequency() const {
    return attempts ? static_cast<double>(failures) / static_cast<double>(attempts) : 0.0;
  }
  /// Binomial standard error of frequency().
  double stderr_frequency() const;
};

/// Monte Carlo tallies and empirical estimates for one run (or a merged set
/// of replications). Energy is accumulated as exact integer multiples of the
/// three per-slot quanta P*L/(R*B).
struct SimResult {
  Mode mode = Mode::af;
  std::uint64_t slots = 0;
  std::uint64_t rounds = 0;  ///< AF: two-slot rounds; DF: completed broadcast cycles
  std::uint64_t bits_t1_to_t2 = 0;
  std::uint64_t bits_t2_to_t1 = 0;
  double energy = 0;  ///< joules
  std::vector<std::uint64_t> state_occupancy;  ///< indexed by state_labels(mode)

  double empirical_goodput = 0;  ///< bits/sec/Hz
  double stderr_goodput = 0;
  double empirical_eb = 0;  ///< joules/bit; +inf when nothing was delivered
  double stderr_eb = 0;

  LinkTally outage_12, outage_21;                          ///< AF cascades
  LinkTally outage_1r, outage_2r, outage_r1, outage_r2;    ///< DF links

  /// DF only: counts of broadcast outcomes (to S0, S1, S2, S3).
  std::vector<std::uint64_t> s3_exit_counts;

  /// AF only, filled when attempt tracking is on: histogram over the number
  /// of rounds a codeword needed until delivery (index i = i+1 attempts,
  /// last bin collects the tail). Retransmissions never change throughput
  /// accounting; this exists for inspection.
  std::vector<std::uint64_t> attempts_t1_to_t2, attempts_t2_to_t1;

  int n_reps = 1;

  std::uint64_t delivered_bits() const { return bits_t1_to_t2 + bits_t2_to_t1; }
};

/// Simulates n_rounds AF rounds (two slots each) with fresh fading per round.
/// Deterministic for a fixed seed. Standard errors come from per-round
/// tallies (rounds are i.i.d.). track_attempts additionally records the
/// per-codeword ARQ attempt histograms.
SimResult simulate_af(const NetworkConfig& cfg, double rate, std::uint64_t n_rounds,
                      std::uint64_t seed, bool track_attempts = false);

/// Executes the DF buffer state machine for exactly n_slots slots with fresh
/// fading per slot. Standard errors come from broadcast-to-broadcast cycles,
/// which are i.i.d. by construction.
SimResult simulate_df(const NetworkConfig& cfg, double rate, std::uint64_t n_slots,
                      std::uint64_t seed);

/// Runs n_reps independent replications (child seed = f(master_seed, i)) and
/// merges them in replication order; the merged result is independent of
/// n_threads. With n_reps >= 2 the standard errors are computed across
/// replications.
SimResult run_replications(const NetworkConfig& cfg, Mode mode, double rate,
                           std::uint64_t per_rep_size, int n_reps,
                           std::uint64_t master_seed, int n_threads = 1);

/// Deterministic fold of per-replication results (exposed for testing).
SimResult merge_replications(const std::vector<SimResult>& reps);

}  // namespace twrn
