#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "twrn/channel.hpp"

namespace twrn {

enum class Mode { af, df };

const char* mode_name(Mode mode);

/// State labels per mode.
///
/// AF: S_b (relay ready to broadcast, every odd slot) plus the four
/// post-broadcast outcomes S0 (both outage), S1 (T1->T2 delivered only),
/// S2 (T2->T1 delivered only), S3 (both delivered).
///
/// DF buffer states: S0 empty, S1 holds x1 awaiting x2, S2 holds x2 awaiting
/// x1, S3 holds both and broadcasts.
std::vector<std::string> state_labels(Mode mode);

std::size_t state_count(Mode mode);

/// Square row-stochastic matrix of per-slot transition probabilities.
struct TransitionMatrix {
  Mode mode = Mode::af;
  std::size_t n = 0;
  std::vector<double> p;  ///< row-major, n*n

  double at(std::size_t i, std::size_t j) const { return p[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return p[i * n + j]; }
};

enum class StationarySource { chain_solved, paper_closed_form };

struct StationaryDistribution {
  Mode mode = Mode::df;
  std::vector<double> pi;
  /// chain_solved: max-norm of pi*P - pi. paper_closed_form: |sum(pi) - 1|.
  double residual = 0;
  StationarySource source = StationarySource::chain_solved;
};

/// Per-state differences between two stationary distributions over the same
/// label set. For DF the S1+S2 aggregate is reported separately because the
/// closed form and the protocol chain split that mass differently on
/// asymmetric profiles.
struct StationaryComparison {
  Mode mode = Mode::df;
  std::vector<double> per_state_diff;  ///< a.pi - b.pi
  double linf = 0;
  double s1_plus_s2_diff = 0;  ///< DF only; 0 for AF
};

/// AF chain over (S_b, S0, S1, S2, S3): S_b branches on the joint outage
/// outcome; every outcome state returns to S_b in the next odd slot.
TransitionMatrix build_af_chain(const AfOutagePair& outage);

/// DF per-slot buffer chain. S0 polls T1, S1 polls T2, S2 polls T1 for a new
/// x1, S3 broadcasts. From S3: both deliveries -> S0; T1 decoded but T2
/// missed -> S1 (relay retains x1); the mirror case -> S2; both missed ->
/// rebroadcast (self-loop).
TransitionMatrix build_df_chain(const DfOutageProfile& outage);

/// Solves pi * P = pi, sum(pi) = 1 by a dense direct solve (one balance
/// equation replaced by the normalization constraint). Requires a single
/// recurrent class; an absorbing state or a singular system raises
/// DegenerateError naming the offender.
StationaryDistribution stationary(const TransitionMatrix& P);

/// Published closed form for the DF buffer-state probabilities. Reproduced
/// verbatim; on asymmetric profiles it deviates from stationary(build_df_chain(.))
/// in the S1/S2 split (see compare_stationary).
StationaryDistribution df_stationary_paper(const DfOutageProfile& outage);

StationaryComparison compare_stationary(const StationaryDistribution& a,
                                        const StationaryDistribution& b);

}  // namespace twrn
