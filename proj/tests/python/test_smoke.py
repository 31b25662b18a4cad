"""Smoke tests for the python bindings: a thin pass over each exposed surface."""

import math
import sys

import _twrn as t


def check(ok, msg):
    if not ok:
        raise AssertionError(msg)


def main():
    cfg = t.default_config(10.0)
    check(abs(cfg.p1 - 1e-9) < 1e-23, "default power from snr")
    params = t.derive_params(cfg)
    check(abs(params.sigma1_sq - 8.693878900208465) < 1e-12, "sigma1_sq")
    check(params.sigma1_sq == params.sigma2_sq, "midpoint symmetry")

    # Strict config ingestion.
    try:
        t.load_config_json('{"p1": 1}')
        check(False, "expected ConfigError")
    except ValueError as e:
        check("missing key" in str(e), "config error message")

    # Quadrature and golden-section kernels.
    q = t.integrate_semi_infinite(lambda z: math.exp(-z), 1e-9)
    check(abs(q.value - 1.0) < 1e-8, "exponential integral")
    x, fx = t.golden_section_max(lambda v: -(v - 2.0) ** 2, 0.0, 5.0, 1e-6)
    check(abs(x - 2.0) < 1e-4, "golden section")

    # Outage probabilities and the Markov layer.
    pair = t.af_outage_pair(cfg, params, 2.0)
    check(pair.p12 == pair.p21, "af symmetry")
    check(0.0 < pair.p12 < 1.0, "af outage range")
    prof = t.df_outage_profile(cfg, params, 2.0)
    pi = t.stationary(t.build_df_chain(prof))
    check(abs(sum(pi.pi) - 1.0) < 1e-12, "stationary normalization")
    cmp = t.compare_stationary(pi, t.df_stationary_paper(prof))
    check(cmp.linf < 1e-10, "symmetric profile: chain equals closed form")

    af_pi = t.stationary(t.build_af_chain(pair))
    check(abs(af_pi.pi[0] - 0.5) < 1e-12, "broadcast-ready state mass")

    # Metrics.
    pt = t.df_point(cfg, params, 2.0)
    check(pt.normalized_rate <= 2.0 / 3.0 + 1e-9, "df efficiency bound")
    check(pt.eb_paper < pt.eb_renewal, "weighting deviation direction")

    # Simulation determinism and analytic agreement.
    a = t.simulate_af(cfg, 2.0, 50000, 7)
    b = t.simulate_af(cfg, 2.0, 50000, 7)
    check(a.energy == b.energy and a.delivered_bits() == b.delivered_bits(),
          "deterministic seed")
    eta = t.goodput_af(2.0, pair)
    check(abs(a.empirical_goodput - eta) < 4 * a.stderr_goodput, "af goodput")

    merged = t.run_replications(cfg, t.Mode.df, 2.0, 20000, 4, 42, 2)
    check(merged.n_reps == 4 and merged.slots == 80000, "replication merge")

    # Sweep and optimizer.
    spec = t.SweepSpec()
    spec.mode = t.Mode.af
    spec.rate_min, spec.rate_max, spec.steps = 0.5, 6.0, 8
    spec.snr_db = [10.0]
    pts = t.sweep(cfg, spec)
    check(len(pts) == 8, "sweep size")
    rep = t.optimal_rate(cfg, spec, t.Objective.max_goodput)
    check(spec.rate_min <= rep.r_star <= spec.rate_max, "optimum in range")
    crossing = t.crossing_rate(cfg, 10.0)
    check(crossing is not None and crossing > 0, "af->df crossing")

    print("python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
