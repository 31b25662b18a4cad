#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "twrn/errors.hpp"
#include "twrn/output.hpp"
#include "twrn/rng.hpp"

using namespace twrn;

TEST_CASE("doubles carry 12 significant digits") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(format_double(8.693878900208465) == "8.69387890021");
  CHECK(format_double(1e-10) == "1e-10");
}

TEST_CASE("csv serialization round-trips byte for byte") {
  std::vector<OutputRecord> records;

  OutputRecord af;
  af.mode = "af";
  af.snr_db = 10.0;
  af.rate_bpshz = 2.0;
  af.p12 = 0.21192174521452933;
  af.p21 = 0.21192174521452933;
  af.goodput_bpshz = 1.5761565095709413;
  af.normalized_rate = 0.7880782547854707;
  af.eb_paper = 9.516821399977988e-16;
  af.eb_renewal = 9.516821399977988e-16;
  af.source = "analytic";
  records.push_back(af);

  OutputRecord df;
  df.mode = "df";
  df.snr_db = 0.0;
  df.rate_bpshz = 0.5;
  df.p1r = 0.04654;
  df.p2r = 0.04654;
  df.pr1 = 0.0909;
  df.pr2 = 0.0909;
  df.goodput_bpshz = 0.31;
  df.normalized_rate = 0.62;
  df.eb_paper = 1.1e-15;
  df.eb_renewal = 1.6e-15;
  df.eb_empirical = 1.59e-15;
  df.goodput_empirical = 0.3099;
  df.source = "mc";
  df.stderr_goodput = 0.0004;
  df.stderr_eb = 2e-18;
  records.push_back(df);

  const std::string once = records_to_csv(records);
  const std::vector<OutputRecord> parsed = parse_csv(once);
  const std::string twice = records_to_csv(parsed);
  CHECK(once == twice);

  // Round-tripping is idempotent under repeated cycles too.
  const std::string thrice = records_to_csv(parse_csv(twice));
  CHECK(twice == thrice);
}

TEST_CASE("round-trip stability over random values") {
  CounterRng rng(77);
  std::vector<OutputRecord> records;
  for (int i = 0; i < 200; ++i) {
    OutputRecord r;
    r.mode = (i % 2) ? "af" : "df";
    r.source = (i % 3) ? "analytic" : "mc";
    r.snr_db = -20.0 + 60.0 * rng.next_unit();
    r.rate_bpshz = rng.next_exponential(2.0);
    r.goodput_bpshz = rng.next_exponential(1.0);
    r.eb_paper = rng.next_exponential(1e-15);
    if (i % 4 == 0) r.eb_empirical = rng.next_exponential(1e-15);
    records.push_back(r);
  }
  const std::string once = records_to_csv(records);
  CHECK(records_to_csv(parse_csv(once)) == once);
}

TEST_CASE("header is stable and complete") {
  const auto& h = OutputRecord::csv_header();
  REQUIRE(h.size() == 18);
  CHECK(h.front() == "mode");
  CHECK(h[9] == "goodput_bpshz");
  CHECK(h.back() == "stderr_eb");
  const std::string csv = records_to_csv({});
  CHECK(csv ==
        "mode,snr_db,rate_bpshz,p12,p21,p1r,p2r,pr1,pr2,goodput_bpshz,"
        "normalized_rate,eb_paper,eb_renewal,eb_empirical,goodput_empirical,"
        "source,stderr_goodput,stderr_eb\n");
}

TEST_CASE("malformed rows are rejected") {
  CHECK_THROWS_AS(OutputRecord::from_csv_row("af,1,2"), Error);
}

TEST_CASE("absent fields serialize as empty cells") {
  OutputRecord r;
  r.mode = "af";
  r.source = "analytic";
  const std::string row = r.to_csv_row();
  CHECK(row == "af,,,,,,,,,,,,,,,analytic,,");
  const OutputRecord back = OutputRecord::from_csv_row(row);
  CHECK_FALSE(back.snr_db.has_value());
  CHECK_FALSE(back.eb_empirical.has_value());
  CHECK(back.mode == "af");
}
