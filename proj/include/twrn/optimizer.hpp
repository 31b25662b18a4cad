#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "twrn/metrics.hpp"
#include "twrn/simulator.hpp"

namespace twrn {

enum class MetricSource { analytic, monte_carlo };
enum class Objective { max_goodput, min_eb };
enum class GridScale { linear, log };

struct SweepSpec {
  Mode mode = Mode::af;
  double rate_min = 0.05;
  double rate_max = 12.0;
  int steps = 200;
  std::vector<double> snr_db;  ///< empty: use cfg powers as-is
  MetricSource source = MetricSource::analytic;
  EbVariant eb_variant = EbVariant::renewal;
  GridScale scale = GridScale::linear;
  EnergyUnits units = EnergyUnits::joules_per_bit;
  double refine_tol = 1e-6;
  /// Monte Carlo budget per grid point (rounds for AF, slots for DF).
  std::uint64_t mc_size = 100000;
  int mc_reps = 1;
  int n_threads = 1;  ///< replication workers; results never depend on it

  void validate() const;
};

/// One sweep output point: the analytic PerformancePoint plus, for Monte
/// Carlo sweeps, the empirical estimates at the same (snr, rate).
struct SweepPoint {
  double snr_db = 0;
  PerformancePoint point;
  bool has_empirical = false;
  double goodput_empirical = 0;
  double stderr_goodput = 0;
  double eb_empirical = 0;
  double stderr_eb = 0;
};

struct OptimalRateReport {
  Objective objective = Objective::max_goodput;
  double r_star = 0;
  double value = 0;            ///< objective value at r_star
  double bracket_lo = 0;       ///< refinement bracket around the best grid point
  double bracket_hi = 0;
  std::vector<std::pair<double, double>> grid;  ///< (rate, objective value)
};

std::vector<double> make_rate_grid(double lo, double hi, int steps, GridScale scale);

/// Evaluates one point per (snr, rate) pair, snr-major, rate-minor. Monte
/// Carlo sweeps reuse the same master seed at every grid point (common
/// random numbers) so the curves are smooth enough to refine.
std::vector<SweepPoint> sweep(const NetworkConfig& cfg, const SweepSpec& spec);

/// Dense grid scan followed by golden-section refinement inside the bracket
/// formed by the best grid point's neighbors. Exposed separately so
/// constructed objectives can be optimized directly in tests.
OptimalRateReport optimize_on_grid(const std::function<double(double)>& objective,
                                   const std::vector<double>& grid, Objective kind,
                                   double refine_tol);

/// Same scan/refine applied to the spec's metric objective at spec.snr_db[0]
/// (or cfg's own powers when the list is empty). The grid is log-spaced.
/// Throws DegenerateError when the objective is non-finite on the whole grid.
OptimalRateReport optimal_rate(const NetworkConfig& cfg, const SweepSpec& spec,
                               Objective objective);

/// Smallest rate in [rate_min, rate_max] where eta_DF - eta_AF changes sign,
/// located by grid scan plus bisection; nullopt when no sign change exists.
std::optional<double> crossing_rate(const NetworkConfig& cfg, double snr_db,
                                    double rate_min = 0.05, double rate_max = 12.0,
                                    double tol = 1e-9);

}  // namespace twrn
