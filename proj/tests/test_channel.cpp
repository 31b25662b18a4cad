#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "twrn/channel.hpp"
#include "twrn/config.hpp"
#include "twrn/errors.hpp"

using namespace twrn;

namespace {

constexpr double kSigma = 8.693878900208465;  // 0.5^(-3.12)

NetworkConfig reference_config(double snr_db) { return default_config(snr_db); }

}  // namespace

TEST_CASE("channel draws are deterministic per seed") {
  const DerivedParams d = derive_params(reference_config(10.0));
  CounterRng a(123), b(123), c(124);
  for (int i = 0; i < 100; ++i) {
    const ChannelDraw da = sample_channel_draw(d, a);
    const ChannelDraw db = sample_channel_draw(d, b);
    const ChannelDraw dc = sample_channel_draw(d, c);
    CHECK(da.g1r == db.g1r);
    CHECK(da.g2r == db.g2r);
    CHECK(da.gr1 == db.gr1);
    CHECK(da.gr2 == db.gr2);
    CHECK(da.g1r != dc.g1r);
  }
}

TEST_CASE("sample means match the link variances") {
  NetworkConfig cfg = reference_config(10.0);
  cfg.alpha = 0.0;  // unit means
  const DerivedParams d = derive_params(cfg);
  CounterRng rng(99);
  const int n = 1000000;
  double s1 = 0, s2 = 0, sr1 = 0, sr2 = 0;
  for (int i = 0; i < n; ++i) {
    const ChannelDraw dr = sample_channel_draw(d, rng);
    s1 += dr.g1r;
    s2 += dr.g2r;
    sr1 += dr.gr1;
    sr2 += dr.gr2;
  }
  // Exponential with mean 1 has sd 1; allow five standard errors.
  const double tol = 5.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(s1 / n - 1.0) < tol);
  CHECK(std::abs(s2 / n - 1.0) < tol);
  CHECK(std::abs(sr1 / n - 1.0) < tol);
  CHECK(std::abs(sr2 / n - 1.0) < tol);
}

TEST_CASE("exponential median sits at mu ln 2") {
  const DerivedParams d = derive_params(reference_config(10.0));
  CHECK(d.sigma1_sq == doctest::Approx(kSigma).epsilon(1e-14));
  CounterRng rng(5);
  const int n = 400000;
  int below = 0;
  const double median = kSigma * std::log(2.0);
  for (int i = 0; i < n; ++i)
    if (sample_channel_draw(d, rng).g1r < median) ++below;
  const double freq = static_cast<double>(below) / n;
  CHECK(std::abs(freq - 0.5) < 5.0 * std::sqrt(0.25 / n));
}

TEST_CASE("zero channel gives zero rates") {
  const NetworkConfig cfg = reference_config(10.0);
  const DerivedParams d = derive_params(cfg);
  const AfRates r = af_instantaneous_rates(ChannelDraw{0, 0, 0, 0}, cfg, d);
  CHECK(r.r12 == 0.0);
  CHECK(r.r21 == 0.0);
}

TEST_CASE("relay-noise-free limit of the cascade rate") {
  const NetworkConfig cfg = reference_config(10.0);
  const DerivedParams d = derive_params(cfg);
  ChannelDraw draw{2.0, 0.0, 0.0, 1e18};
  const AfRates r = af_instantaneous_rates(draw, cfg, d);
  const double limit = std::log2(1.0 + draw.g1r * cfg.p1 / cfg.noise_power);
  CHECK(r.r12 == doctest::Approx(limit).epsilon(1e-9));
}

TEST_CASE("symmetric draws give symmetric rates under equal powers") {
  const NetworkConfig cfg = reference_config(10.0);
  const DerivedParams d = derive_params(cfg);
  const AfRates r = af_instantaneous_rates(ChannelDraw{3.1, 3.1, 0.7, 0.7}, cfg, d);
  CHECK(r.r12 == r.r21);
}

TEST_CASE("cascade cdf vanishes at the origin") {
  CHECK(cascade_cdf(0.0, 17.5, kSigma, kSigma) == 0.0);
}

TEST_CASE("cascade cdf at a = 0 reduces to the exponential cdf") {
  CHECK(cascade_cdf(std::log(2.0), 0.0, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-9));
  for (double x : {0.01, 0.2, 1.0, 4.0}) {
    const double expected = 1.0 - std::exp(-x / kSigma);
    CHECK(cascade_cdf(x, 0.0, kSigma, 2.0) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("cascade cdf matches frozen high-precision values") {
  // 40-digit quadrature of the defining integral.
  struct Point {
    double x, a, mu1, mu2, f;
  };
  const Point pts[] = {
      {0.0115, 18.3876, kSigma, kSigma, 0.0173443169901002631},
      {0.3, 17.4876, kSigma, kSigma, 0.211920678676238949},
      {1.0, 2.0, 1.0, 3.0, 0.861971931067175214},
      {0.05, 17.4, kSigma, 2.0, 0.152505633957608913},
      {2.0, 0.5, 4.0, 0.7, 0.682580154092841144},
  };
  for (const auto& p : pts)
    CHECK(cascade_cdf(p.x, p.a, p.mu1, p.mu2) == doctest::Approx(p.f).epsilon(1e-9));
}

TEST_CASE("cascade cdf agrees with the bessel-form oracle") {
  const double params[][4] = {
      {0.0115, 18.39, kSigma, kSigma}, {0.3, 17.49, kSigma, kSigma},
      {1.0, 2.0, 1.0, 3.0},            {15.0, 18.39, kSigma, kSigma},
      {0.004, 17.4, kSigma, kSigma},   {2.0, 0.5, 4.0, 0.7},
      {25.5, 17.49, kSigma, kSigma},
  };
  for (const auto& p : params) {
    const double via_quad = cascade_cdf(p[0], p[1], p[2], p[3]);
    const double via_bessel = twrn_test::cascade_cdf_bessel(p[0], p[1], p[2], p[3]);
    CHECK(via_quad == doctest::Approx(via_bessel).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("cascade cdf is a valid cdf in x") {
  double prev = 0.0;
  for (double x = 0.0; x <= 60.0; x += 0.5) {
    const double f = cascade_cdf(x, 17.49, kSigma, kSigma);
    CHECK(f >= prev - 1e-12);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    prev = f;
  }
  CHECK(cascade_cdf(1e4, 17.49, kSigma, kSigma) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cascade cdf against a monte carlo sample of X") {
  const double x = 0.3, a = 17.49, mu1 = kSigma, mu2 = kSigma;
  const double f = cascade_cdf(x, a, mu1, mu2);
  CounterRng rng(2024);
  const int n = 1000000;
  int below = 0;
  for (int i = 0; i < n; ++i) {
    const double y1 = rng.next_exponential(mu1);
    const double y2 = rng.next_exponential(mu2);
    if (y1 * y2 / (a + y2) < x) ++below;
  }
  const double freq = static_cast<double>(below) / n;
  const double se = std::sqrt(f * (1.0 - f) / n);
  CHECK(std::abs(freq - f) < 4.0 * se);
}

TEST_CASE("af outage is zero at zero rate and symmetric at the midpoint") {
  const NetworkConfig cfg = reference_config(10.0);
  const DerivedParams d = derive_params(cfg);
  const AfOutagePair z = af_outage_pair(cfg, d, 0.0);
  CHECK(z.p12 == 0.0);
  CHECK(z.p21 == 0.0);
  for (double rate : {0.5, 1.0, 2.0, 4.0}) {
    const AfOutagePair p = af_outage_pair(cfg, d, rate);
    CHECK(p.p12 == p.p21);  // identical arguments by symmetry
    CHECK(p.p12 >= 0.0);
    CHECK(p.p12 <= 1.0);
  }
}

TEST_CASE("af outage grows with rate and shrinks with power") {
  const NetworkConfig cfg = reference_config(10.0);
  const DerivedParams d = derive_params(cfg);
  double prev = -1.0;
  for (double rate = 0.25; rate <= 8.0; rate *= 2.0) {
    const AfOutagePair p = af_outage_pair(cfg, d, rate);
    CHECK(p.p12 > prev);
    prev = p.p12;
  }
  for (double rate : {0.5, 2.0, 6.0}) {
    const AfOutagePair low = af_outage_pair(cfg, d, rate);
    NetworkConfig strong = cfg;
    strong.p1 *= 2.0;
    const AfOutagePair hi = af_outage_pair(strong, derive_params(strong), rate);
    CHECK(hi.p12 <= low.p12 + 1e-12);
    NetworkConfig relay = cfg;
    relay.pr *= 2.0;
    const AfOutagePair hr = af_outage_pair(relay, derive_params(relay), rate);
    CHECK(hr.p12 <= low.p12 + 1e-12);
  }
}

TEST_CASE("df outage profile basics") {
  const NetworkConfig cfg = reference_config(10.0);
  const DerivedParams d = derive_params(cfg);

  const DfOutageProfile z = df_outage_profile(cfg, d, 0.0);
  CHECK(z.p1r == 0.0);
  CHECK(z.p2r == 0.0);
  CHECK(z.pr1 == 0.0);
  CHECK(z.pr2 == 0.0);

  const DfOutageProfile p = df_outage_profile(cfg, d, 2.0);
  CHECK(p.p1r == p.p2r);  // midpoint symmetry, equal powers
  CHECK(p.pr1 == p.pr2);

  // Relay links carry the power split: pr1 equals p1r with P1 -> Pr/2.
  NetworkConfig half = cfg;
  half.p1 = cfg.pr / 2.0;
  const DfOutageProfile ph = df_outage_profile(half, derive_params(half), 2.0);
  CHECK(ph.p1r == p.pr1);

  double prev = -1.0;
  for (double rate = 0.25; rate <= 16.0; rate *= 2.0) {
    const DfOutageProfile q = df_outage_profile(cfg, d, rate);
    CHECK(q.p1r > prev);
    CHECK(q.pr1 >= q.p1r);  // broadcast sees half power, hence more outage
    prev = q.p1r;
  }
}

TEST_CASE("empirical af outage matches the analytic pair") {
  const NetworkConfig cfg = reference_config(10.0);
  const DerivedParams d = derive_params(cfg);
  const double rate = 2.0;
  const AfOutagePair p = af_outage_pair(cfg, d, rate);
  CounterRng rng(31337);
  const int n = 400000;
  int out12 = 0;
  for (int i = 0; i < n; ++i) {
    const ChannelDraw draw = sample_channel_draw(d, rng);
    const AfRates r = af_instantaneous_rates(draw, cfg, d);
    if (r.r12 < rate) ++out12;
  }
  const double freq = static_cast<double>(out12) / n;
  CHECK(std::abs(freq - p.p12) < 4.0 * std::sqrt(p.p12 * (1.0 - p.p12) / n));
}
