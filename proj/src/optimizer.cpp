#include "twrn/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twrn/errors.hpp"
#include "twrn/numerics.hpp"

namespace twrn {

void SweepSpec::validate() const {
  if (!(rate_min > 0.0)) throw Error("sweep: rate_min must be > 0");
  if (!(rate_max > rate_min)) throw Error("sweep: rate_max must exceed rate_min");
  if (steps < 2) throw Error("sweep: steps must be >= 2");
  if (!(refine_tol > 0.0)) throw Error("sweep: refinement tolerance must be > 0");
  if (mc_reps < 1) throw Error("sweep: mc_reps must be >= 1");
  if (mc_size < 1) throw Error("sweep: mc_size must be >= 1");
}

std::vector<double> make_rate_grid(double lo, double hi, int steps, GridScale scale) {
  std::vector<double> grid(static_cast<std::size_t>(steps));
  if (scale == GridScale::log) {
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < steps; ++i)
      grid[static_cast<std::size_t>(i)] =
          std::exp(llo + (lhi - llo) * static_cast<double>(i) / (steps - 1));
  } else {
    for (int i = 0; i < steps; ++i)
      grid[static_cast<std::size_t>(i)] =
          lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

namespace {

SweepPoint evaluate_point(const NetworkConfig& cfg, const SweepSpec& spec,
                          double snr_db, double rate) {
  const DerivedParams params = derive_params(cfg);
  SweepPoint sp;
  sp.snr_db = snr_db;
  sp.point = spec.mode == Mode::af ? af_point(cfg, params, rate, spec.units)
                                   : df_point(cfg, params, rate, spec.units);
  if (spec.source == MetricSource::monte_carlo) {
    // Common random numbers: the same master seed at every grid point keeps
    // the empirical curve smooth in R.
    const SimResult sim = run_replications(cfg, spec.mode, rate, spec.mc_size,
                                           spec.mc_reps, cfg.seed, spec.n_threads);
    sp.has_empirical = true;
    sp.goodput_empirical = sim.empirical_goodput;
    sp.stderr_goodput = sim.stderr_goodput;
    const double unit_scale =
        spec.units == EnergyUnits::paper_normalized ? cfg.bandwidth_hz : 1.0;
    sp.eb_empirical = sim.empirical_eb * unit_scale;
    sp.stderr_eb = sim.stderr_eb * unit_scale;
  }
  return sp;
}

}  // namespace

std::vector<SweepPoint> sweep(const NetworkConfig& cfg, const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> grid =
      make_rate_grid(spec.rate_min, spec.rate_max, spec.steps, spec.scale);

  std::vector<NetworkConfig> configs;
  std::vector<double> snrs;
  if (spec.snr_db.empty()) {
    configs.push_back(cfg);
    const DerivedParams d = derive_params(cfg);
    snrs.push_back(10.0 * std::log10(d.snr1));
  } else {
    for (double s : spec.snr_db) {
      configs.push_back(with_snr_db(cfg, s));
      snrs.push_back(s);
    }
  }

  std::vector<SweepPoint> out;
  out.reserve(configs.size() * grid.size());
  for (std::size_t c = 0; c < configs.size(); ++c)
    for (double rate : grid) out.push_back(evaluate_point(configs[c], spec, snrs[c], rate));
  return out;
}

OptimalRateReport optimize_on_grid(const std::function<double(double)>& objective,
                                   const std::vector<double>& grid, Objective kind,
                                   double refine_tol) {
  if (grid.size() < 2) throw Error("optimize_on_grid: grid needs at least 2 points");
  const double sign = kind == Objective::max_goodput ? 1.0 : -1.0;

  OptimalRateReport report;
  report.objective = kind;
  report.grid.reserve(grid.size());

  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_idx = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v;
    try {
      v = objective(grid[i]);
    } catch (const DegenerateError&) {
      v = std::numeric_limits<double>::quiet_NaN();
    }
    report.grid.emplace_back(grid[i], v);
    if (std::isfinite(v) && sign * v > best) {
      best = sign * v;
      best_idx = i;
    }
  }
  if (best_idx == grid.size())
    throw DegenerateError("optimal_rate: objective is non-finite across the whole grid");

  report.bracket_lo = grid[best_idx == 0 ? 0 : best_idx - 1];
  report.bracket_hi = grid[std::min(best_idx + 1, grid.size() - 1)];

  double r_star = grid[best_idx];
  double value = best;
  if (report.bracket_hi > report.bracket_lo) {
    auto signed_objective = [&](double r) {
      try {
        const double v = objective(r);
        return std::isfinite(v) ? sign * v : -std::numeric_limits<double>::infinity();
      } catch (const DegenerateError&) {
        return -std::numeric_limits<double>::infinity();
      }
    };
    const auto [x, fx] =
        golden_section_max(signed_objective, report.bracket_lo, report.bracket_hi, refine_tol);
    if (fx > value) {
      r_star = x;
      value = fx;
    }
  }

  report.r_star = r_star;
  report.value = sign * value;
  return report;
}

OptimalRateReport optimal_rate(const NetworkConfig& cfg, const SweepSpec& spec,
                               Objective objective) {
  spec.validate();
  const NetworkConfig operating =
      spec.snr_db.empty() ? cfg : with_snr_db(cfg, spec.snr_db.front());
  const DerivedParams params = derive_params(operating);

  auto metric = [&](double rate) -> double {
    if (spec.source == MetricSource::monte_carlo) {
      const SimResult sim = run_replications(operating, spec.mode, rate, spec.mc_size,
                                             spec.mc_reps, operating.seed, spec.n_threads);
      return objective == Objective::max_goodput ? sim.empirical_goodput
                                                 : sim.empirical_eb;
    }
    const PerformancePoint pt = spec.mode == Mode::af
                                    ? af_point(operating, params, rate, spec.units)
                                    : df_point(operating, params, rate, spec.units);
    if (objective == Objective::max_goodput) return pt.goodput;
    return spec.eb_variant == EbVariant::paper ? pt.eb_paper : pt.eb_renewal;
  };

  // Dense log-spaced pre-scan; no unimodality is assumed, the full grid is
  // reported so plateaus and extra modes stay visible.
  const std::vector<double> grid =
      make_rate_grid(spec.rate_min, spec.rate_max, spec.steps, GridScale::log);
  return optimize_on_grid(metric, grid, objective, spec.refine_tol);
}

std::optional<double> crossing_rate(const NetworkConfig& cfg, double snr_db,
                                    double rate_min, double rate_max, double tol) {
  const NetworkConfig operating = with_snr_db(cfg, snr_db);
  const DerivedParams params = derive_params(operating);

  auto gap = [&](double rate) {
    const DfOutageProfile dfp = df_outage_profile(operating, params, rate);
    double eta_df = 0.0;
    try {
      eta_df = goodput_df(rate, dfp, stationary(build_df_chain(dfp)));
    } catch (const DegenerateError&) {
      // A dead link at this rate: DF delivers nothing.
    }
    const double eta_af = goodput_af(rate, af_outage_pair(operating, params, rate));
    return eta_df - eta_af;
  };

  constexpr int kScanPoints = 256;
  const std::vector<double> grid =
      make_rate_grid(rate_min, rate_max, kScanPoints, GridScale::log);
  double prev = gap(grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double cur = gap(grid[i]);
    if (prev == 0.0) return grid[i - 1];
    if ((prev < 0.0 && cur >= 0.0) || (prev > 0.0 && cur <= 0.0)) {
      double lo = grid[i - 1], hi = grid[i];
      double flo = prev;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = gap(mid);
        if (fmid == 0.0) return mid;
        if ((flo < 0.0) == (fmid < 0.0)) {
          lo = mid;
          flo = fmid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev = cur;
  }
  return std::nullopt;
}

}  // namespace twrn
