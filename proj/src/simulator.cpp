#include "twrn/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "twrn/channel.hpp"
#include "twrn/errors.hpp"
#include "twrn/rng.hpp"

namespace twrn {

double LinkTally::stderr_frequency() const {
  if (attempts == 0) return 0.0;
  const double p = frequency();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(attempts));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Accumulates i.i.d. pairs and produces the ratio-of-sums standard error
// for theta = sum(x) / sum(y).
struct RatioAccumulator {
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  std::uint64_t n = 0;

  void add(double x, double y) {
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
    ++n;
  }

  double ratio() const { return sy > 0 ? sx / sy : kInf; }

  double stderr_ratio() const {
    if (n < 2 || !(sy > 0)) return 0.0;
    const double theta = sx / sy;
    const double ss = sxx - 2.0 * theta * sxy + theta * theta * syy;
    const double corrected = ss * static_cast<double>(n) / static_cast<double>(n - 1);
    return corrected > 0 ? std::sqrt(corrected) / sy : 0.0;
  }
};

struct SlotQuanta {
  double e1, e2, er;  // per-slot transmit energies of T1, T2, relay, joules
};

SlotQuanta slot_quanta(const NetworkConfig& cfg, double rate) {
  const double slot_seconds =
      static_cast<double>(cfg.codeword_bits) / (rate * cfg.bandwidth_hz);
  return {cfg.p1 * slot_seconds, cfg.p2 * slot_seconds, cfg.pr * slot_seconds};
}

void finalize_estimates(SimResult& r, const NetworkConfig& cfg, double rate,
                        const RatioAccumulator& goodput_acc,
                        const RatioAccumulator& eb_acc) {
  const double L = static_cast<double>(cfg.codeword_bits);
  const double bits = static_cast<double>(r.delivered_bits());
  r.empirical_goodput =
      r.slots ? rate * bits / (static_cast<double>(r.slots) * L) : 0.0;
  r.stderr_goodput = (rate / L) * goodput_acc.stderr_ratio();
  r.empirical_eb = bits > 0 ? r.energy / bits : kInf;
  r.stderr_eb = eb_acc.stderr_ratio();
}

}  // namespace

SimResult simulate_af(const NetworkConfig& cfg, double rate, std::uint64_t n_rounds,
                      std::uint64_t seed, bool track_attempts) {
  cfg.validate();
  if (!(rate > 0.0)) throw Error("simulate_af: rate must be > 0");
  if (n_rounds < 1) throw Error("simulate_af: n_rounds must be >= 1");

  const DerivedParams params = derive_params(cfg);
  const SlotQuanta q = slot_quanta(cfg, rate);
  const std::uint64_t L = cfg.codeword_bits;
  CounterRng rng(seed);

  SimResult r;
  r.mode = Mode::af;
  r.state_occupancy.assign(5, 0);  // S_b, S0, S1, S2, S3

  constexpr std::size_t kAttemptBins = 64;
  std::uint64_t attempts12 = 0, attempts21 = 0;
  if (track_attempts) {
    r.attempts_t1_to_t2.assign(kAttemptBins, 0);
    r.attempts_t2_to_t1.assign(kAttemptBins, 0);
  }

  RatioAccumulator goodput_acc;  // (delivered bits, slots) per round
  RatioAccumulator eb_acc;       // (energy, delivered bits) per round
  const double round_energy = q.e1 + q.e2 + q.er;

  for (std::uint64_t i = 0; i < n_rounds; ++i) {
    const ChannelDraw draw = sample_channel_draw(params, rng);
    const AfRates rates = af_instantaneous_rates(draw, cfg, params);
    const bool ok12 = !(rates.r12 < rate);  // outage is strict: rate == R succeeds
    const bool ok21 = !(rates.r21 < rate);

    r.outage_12.attempts++;
    r.outage_21.attempts++;
    if (!ok12) r.outage_12.failures++;
    if (!ok21) r.outage_21.failures++;

    if (track_attempts) {
      ++attempts12;
      ++attempts21;
      if (ok12) {
        r.attempts_t1_to_t2[std::min(attempts12, kAttemptBins) - 1]++;
        attempts12 = 0;
      }
      if (ok21) {
        r.attempts_t2_to_t1[std::min(attempts21, kAttemptBins) - 1]++;
        attempts21 = 0;
      }
    }

    const std::uint64_t delivered = (ok12 ? L : 0) + (ok21 ? L : 0);
    r.bits_t1_to_t2 += ok12 ? L : 0;
    r.bits_t2_to_t1 += ok21 ? L : 0;

    r.state_occupancy[0]++;  // S_b odd slot
    const std::size_t outcome = ok12 ? (ok21 ? 4 : 2) : (ok21 ? 3 : 1);
    r.state_occupancy[outcome]++;

    goodput_acc.add(static_cast<double>(delivered), 2.0);
    eb_acc.add(round_energy, static_cast<double>(delivered));
  }

  r.rounds = n_rounds;
  r.slots = 2 * n_rounds;
  const double n = static_cast<double>(n_rounds);
  r.energy = n * q.e1 + n * q.e2 + n * q.er;
  finalize_estimates(r, cfg, rate, goodput_acc, eb_acc);
  return r;
}

SimResult simulate_df(const NetworkConfig& cfg, double rate, std::uint64_t n_slots,
                      std::uint64_t seed) {
  cfg.validate();
  if (!(rate > 0.0)) throw Error("simulate_df: rate must be > 0");
  if (n_slots < 1) throw Error("simulate_df: n_slots must be >= 1");

  const DerivedParams params = derive_params(cfg);
  const SlotQuanta q = slot_quanta(cfg, rate);
  const std::uint64_t L = cfg.codeword_bits;
  const double noise = cfg.noise_power;
  // Success thresholds on the raw power gains.
  const double t = rate_threshold(rate);
  const double thr_1r = t * noise / cfg.p1;
  const double thr_2r = t * noise / cfg.p2;
  const double thr_bc = t * 2.0 * noise / cfg.pr;  // equal relay power split
  CounterRng rng(seed);

  SimResult r;
  r.mode = Mode::df;
  r.state_occupancy.assign(4, 0);
  r.s3_exit_counts.assign(4, 0);

  RatioAccumulator goodput_acc;  // (delivered bits, slots) per cycle
  RatioAccumulator eb_acc;       // (energy, delivered bits) per cycle

  int state = 0;
  std::uint64_t cycle_slots = 0, cycle_p1 = 0, cycle_p2 = 0, cycle_bits = 0;

  for (std::uint64_t slot = 0; slot < n_slots; ++slot) {
    r.state_occupancy[static_cast<std::size_t>(state)]++;
    cycle_slots++;
    switch (state) {
      case 0:
      case 2: {  // poll T1
        cycle_p1++;
        r.outage_1r.attempts++;
        const double g = rng.next_exponential(params.sigma1_sq);
        if (g < thr_1r) {
          r.outage_1r.failures++;
        } else {
          state = (state == 0) ? 1 : 3;
        }
        break;
      }
      case 1: {  // poll T2
        cycle_p2++;
        r.outage_2r.attempts++;
        const double g = rng.next_exponential(params.sigma2_sq);
        if (g < thr_2r) {
          r.outage_2r.failures++;
        } else {
          state = 3;
        }
        break;
      }
      default: {  // broadcast
        const double gr1 = rng.next_exponential(params.sigma1_sq);
        const double gr2 = rng.next_exponential(params.sigma2_sq);
        const bool ok_to_t1 = !(gr1 < thr_bc);  // delivers x2
        const bool ok_to_t2 = !(gr2 < thr_bc);  // delivers x1
        r.outage_r1.attempts++;
        r.outage_r2.attempts++;
        if (!ok_to_t1) r.outage_r1.failures++;
        if (!ok_to_t2) r.outage_r2.failures++;

        cycle_bits += (ok_to_t1 ? L : 0) + (ok_to_t2 ? L : 0);
        r.bits_t2_to_t1 += ok_to_t1 ? L : 0;
        r.bits_t1_to_t2 += ok_to_t2 ? L : 0;

        state = ok_to_t1 ? (ok_to_t2 ? 0 : 1) : (ok_to_t2 ? 2 : 3);
        r.s3_exit_counts[static_cast<std::size_t>(state)]++;

        // Broadcast closes one i.i.d. cycle.
        const double cycle_energy = static_cast<double>(cycle_p1) * q.e1 +
                                    static_cast<double>(cycle_p2) * q.e2 + q.er;
        goodput_acc.add(static_cast<double>(cycle_bits), static_cast<double>(cycle_slots));
        eb_acc.add(cycle_energy, static_cast<double>(cycle_bits));
        r.rounds++;
        cycle_slots = cycle_p1 = cycle_p2 = cycle_bits = 0;
        break;
      }
    }
  }

  r.slots = n_slots;
  const double n1 = static_cast<double>(r.state_occupancy[0] + r.state_occupancy[2]);
  const double n2 = static_cast<double>(r.state_occupancy[1]);
  const double nr = static_cast<double>(r.state_occupancy[3]);
  r.energy = n1 * q.e1 + n2 * q.e2 + nr * q.er;
  finalize_estimates(r, cfg, rate, goodput_acc, eb_acc);
  return r;
}

namespace {

void merge_tally(LinkTally& into, const LinkTally& from) {
  into.attempts += from.attempts;
  into.failures += from.failures;
}

}  // namespace

SimResult merge_replications(const std::vector<SimResult>& reps) {
  if (reps.empty()) throw Error("merge_replications: no results to merge");
  if (reps.size() == 1) return reps.front();

  SimResult m;
  m.mode = reps.front().mode;
  m.n_reps = 0;
  m.state_occupancy.assign(reps.front().state_occupancy.size(), 0);
  m.s3_exit_counts.assign(reps.front().s3_exit_counts.size(), 0);
  m.attempts_t1_to_t2.assign(reps.front().attempts_t1_to_t2.size(), 0);
  m.attempts_t2_to_t1.assign(reps.front().attempts_t2_to_t1.size(), 0);

  for (const SimResult& r : reps) {
    if (r.mode != m.mode || r.state_occupancy.size() != m.state_occupancy.size())
      throw Error("merge_replications: replications are not comparable");
    m.slots += r.slots;
    m.rounds += r.rounds;
    m.bits_t1_to_t2 += r.bits_t1_to_t2;
    m.bits_t2_to_t1 += r.bits_t2_to_t1;
    m.energy += r.energy;
    for (std::size_t i = 0; i < m.state_occupancy.size(); ++i)
      m.state_occupancy[i] += r.state_occupancy[i];
    for (std::size_t i = 0; i < m.s3_exit_counts.size(); ++i)
      m.s3_exit_counts[i] += r.s3_exit_counts[i];
    for (std::size_t i = 0; i < m.attempts_t1_to_t2.size(); ++i)
      m.attempts_t1_to_t2[i] += r.attempts_t1_to_t2[i];
    for (std::size_t i = 0; i < m.attempts_t2_to_t1.size(); ++i)
      m.attempts_t2_to_t1[i] += r.attempts_t2_to_t1[i];
    merge_tally(m.outage_12, r.outage_12);
    merge_tally(m.outage_21, r.outage_21);
    merge_tally(m.outage_1r, r.outage_1r);
    merge_tally(m.outage_2r, r.outage_2r);
    merge_tally(m.outage_r1, r.outage_r1);
    merge_tally(m.outage_r2, r.outage_r2);
    m.n_reps += r.n_reps;
  }

  const double pooled_bits = static_cast<double>(m.delivered_bits());
  m.empirical_eb = pooled_bits > 0 ? m.energy / pooled_bits : kInf;

  // Replications have equal slot counts, so the pooled goodput ratio equals
  // the mean of the per-replication estimates exactly.
  const double n = static_cast<double>(reps.size());
  double mean_g = 0.0;
  for (const SimResult& r : reps) mean_g += r.empirical_goodput;
  mean_g /= n;
  m.empirical_goodput = mean_g;

  // Between-replication standard errors.
  double var_g = 0.0;
  for (const SimResult& r : reps) {
    const double d = r.empirical_goodput - mean_g;
    var_g += d * d;
  }
  var_g /= (n - 1.0);
  m.stderr_goodput = std::sqrt(var_g / n);

  double mean_e = 0.0;
  double n_finite = 0.0;
  for (const SimResult& r : reps)
    if (std::isfinite(r.empirical_eb)) {
      mean_e += r.empirical_eb;
      n_finite += 1.0;
    }
  if (n_finite >= 2.0) {
    mean_e /= n_finite;
    double var_e = 0.0;
    for (const SimResult& r : reps)
      if (std::isfinite(r.empirical_eb)) {
        const double d = r.empirical_eb - mean_e;
        var_e += d * d;
      }
    var_e /= (n_finite - 1.0);
    m.stderr_eb = std::sqrt(var_e / n_finite);
  } else {
    m.stderr_eb = 0.0;
  }

  return m;
}

SimResult run_replications(const NetworkConfig& cfg, Mode mode, double rate,
                           std::uint64_t per_rep_size, int n_reps,
                           std::uint64_t master_seed, int n_threads) {
  if (n_reps < 1) throw Error("run_replications: n_reps must be >= 1");
  cfg.validate();
  if (!(rate > 0.0)) throw Error("run_replications: rate must be > 0");
  if (per_rep_size < 1) throw Error("run_replications: per_rep_size must be >= 1");

  std::vector<SimResult> results(static_cast<std::size_t>(n_reps));
  auto run_one = [&](int i) {
    const std::uint64_t child =
        CounterRng::child_seed(master_seed, static_cast<std::uint64_t>(i));
    results[static_cast<std::size_t>(i)] =
        mode == Mode::af ? simulate_af(cfg, rate, per_rep_size, child)
                         : simulate_df(cfg, rate, per_rep_size, child);
  };

  const int workers = std::max(1, std::min(n_threads, n_reps));
  if (workers == 1) {
    for (int i = 0; i < n_reps; ++i) run_one(i);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        try {
          for (int i = next.fetch_add(1); i < n_reps; i = next.fetch_add(1)) run_one(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  return merge_replications(results);
}

}  // namespace twrn
