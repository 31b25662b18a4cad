#include "twrn/output.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "twrn/errors.hpp"

namespace twrn {

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

const std::vector<std::string>& OutputRecord::csv_header() {
  static const std::vector<std::string> header = {
      "mode",        "snr_db",       "rate_bpshz",      "p12",
      "p21",         "p1r",          "p2r",             "pr1",
      "pr2",         "goodput_bpshz", "normalized_rate", "eb_paper",
      "eb_renewal",  "eb_empirical", "goodput_empirical", "source",
      "stderr_goodput", "stderr_eb"};
  return header;
}

namespace {

std::string cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::optional<double> parse_cell(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

}  // namespace

std::string OutputRecord::to_csv_row() const {
  std::ostringstream os;
  os << mode << ',' << cell(snr_db) << ',' << cell(rate_bpshz) << ',' << cell(p12) << ','
     << cell(p21) << ',' << cell(p1r) << ',' << cell(p2r) << ',' << cell(pr1) << ','
     << cell(pr2) << ',' << cell(goodput_bpshz) << ',' << cell(normalized_rate) << ','
     << cell(eb_paper) << ',' << cell(eb_renewal) << ',' << cell(eb_empirical) << ','
     << cell(goodput_empirical) << ',' << source << ',' << cell(stderr_goodput) << ','
     << cell(stderr_eb);
  return os.str();
}

OutputRecord OutputRecord::from_csv_row(const std::string& row) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : row) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  if (cells.size() != csv_header().size())
    throw Error("from_csv_row: expected " + std::to_string(csv_header().size()) +
                " cells, got " + std::to_string(cells.size()));

  OutputRecord r;
  r.mode = cells[0];
  r.snr_db = parse_cell(cells[1]);
  r.rate_bpshz = parse_cell(cells[2]);
  r.p12 = parse_cell(cells[3]);
  r.p21 = parse_cell(cells[4]);
  r.p1r = parse_cell(cells[5]);
  r.p2r = parse_cell(cells[6]);
  r.pr1 = parse_cell(cells[7]);
  r.pr2 = parse_cell(cells[8]);
  r.goodput_bpshz = parse_cell(cells[9]);
  r.normalized_rate = parse_cell(cells[10]);
  r.eb_paper = parse_cell(cells[11]);
  r.eb_renewal = parse_cell(cells[12]);
  r.eb_empirical = parse_cell(cells[13]);
  r.goodput_empirical = parse_cell(cells[14]);
  r.source = cells[15];
  r.stderr_goodput = parse_cell(cells[16]);
  r.stderr_eb = parse_cell(cells[17]);
  return r;
}

std::string records_to_csv(const std::vector<OutputRecord>& records) {
  std::ostringstream os;
  const auto& header = OutputRecord::csv_header();
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& r : records) os << r.to_csv_row() << '\n';
  return os.str();
}

std::vector<OutputRecord> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<OutputRecord> out;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      continue;  // header
    }
    out.push_back(OutputRecord::from_csv_row(line));
  }
  return out;
}

OutputRecord record_from_point(const SweepPoint& pt, MetricSource source) {
  OutputRecord r;
  r.mode = mode_name(pt.point.mode);
  r.snr_db = pt.snr_db;
  r.rate_bpshz = pt.point.rate;
  if (pt.point.mode == Mode::af) {
    r.p12 = pt.point.af_outage.p12;
    r.p21 = pt.point.af_outage.p21;
  } else {
    r.p1r = pt.point.df_outage.p1r;
    r.p2r = pt.point.df_outage.p2r;
    r.pr1 = pt.point.df_outage.pr1;
    r.pr2 = pt.point.df_outage.pr2;
  }
  r.goodput_bpshz = pt.point.goodput;
  r.normalized_rate = pt.point.normalized_rate;
  r.eb_paper = pt.point.eb_paper;
  r.eb_renewal = pt.point.eb_renewal;
  r.source = source == MetricSource::analytic ? "analytic" : "mc";
  if (pt.has_empirical) {
    r.goodput_empirical = pt.goodput_empirical;
    r.stderr_goodput = pt.stderr_goodput;
    if (std::isfinite(pt.eb_empirical)) r.eb_empirical = pt.eb_empirical;
    r.stderr_eb = pt.stderr_eb;
  }
  return r;
}

OutputRecord record_from_sim(const NetworkConfig& cfg, Mode mode, double rate,
                             std::optional<double> snr_db, const SimResult& sim,
                             const PerformancePoint& analytic, EnergyUnits units) {
  SweepPoint pt;
  pt.snr_db = snr_db.value_or(0.0);
  pt.point = analytic;
  pt.has_empirical = true;
  pt.goodput_empirical = sim.empirical_goodput;
  pt.stderr_goodput = sim.stderr_goodput;
  const double unit_scale =
      units == EnergyUnits::paper_normalized ? cfg.bandwidth_hz : 1.0;
  pt.eb_empirical = sim.empirical_eb * unit_scale;
  pt.stderr_eb = sim.stderr_eb * unit_scale;
  OutputRecord r = record_from_point(pt, MetricSource::monte_carlo);
  if (!snr_db) r.snr_db.reset();
  r.mode = mode_name(mode);
  return r;
}

namespace {

nlohmann::json record_to_json_obj(const OutputRecord& rec) {
  nlohmann::json j;
  j["mode"] = rec.mode;
  j["source"] = rec.source;
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  put("snr_db", rec.snr_db);
  put("rate_bpshz", rec.rate_bpshz);
  put("p12", rec.p12);
  put("p21", rec.p21);
  put("p1r", rec.p1r);
  put("p2r", rec.p2r);
  put("pr1", rec.pr1);
  put("pr2", rec.pr2);
  put("goodput_bpshz", rec.goodput_bpshz);
  put("normalized_rate", rec.normalized_rate);
  put("eb_paper", rec.eb_paper);
  put("eb_renewal", rec.eb_renewal);
  put("eb_empirical", rec.eb_empirical);
  put("goodput_empirical", rec.goodput_empirical);
  put("stderr_goodput", rec.stderr_goodput);
  put("stderr_eb", rec.stderr_eb);
  return j;
}

nlohmann::json tally_to_json(const LinkTally& t) {
  return {{"attempts", t.attempts},
          {"failures", t.failures},
          {"frequency", t.frequency()},
          {"stderr", t.stderr_frequency()}};
}

}  // namespace

std::string record_to_json(const OutputRecord& rec) {
  return record_to_json_obj(rec).dump(2);
}

std::string sim_result_to_json(const SimResult& sim) {
  nlohmann::json j;
  j["mode"] = mode_name(sim.mode);
  j["slots"] = sim.slots;
  j["rounds"] = sim.rounds;
  j["bits_t1_to_t2"] = sim.bits_t1_to_t2;
  j["bits_t2_to_t1"] = sim.bits_t2_to_t1;
  j["energy_joules"] = sim.energy;
  const auto labels = state_labels(sim.mode);
  nlohmann::json occ;
  for (std::size_t i = 0; i < labels.size(); ++i) occ[labels[i]] = sim.state_occupancy[i];
  j["state_occupancy"] = occ;
  j["empirical_goodput"] = sim.empirical_goodput;
  j["stderr_goodput"] = sim.stderr_goodput;
  j["empirical_eb"] =
      std::isfinite(sim.empirical_eb) ? nlohmann::json(sim.empirical_eb) : nlohmann::json();
  j["stderr_eb"] = sim.stderr_eb;
  nlohmann::json out;
  if (sim.mode == Mode::af) {
    out["p12"] = tally_to_json(sim.outage_12);
    out["p21"] = tally_to_json(sim.outage_21);
  } else {
    out["p1r"] = tally_to_json(sim.outage_1r);
    out["p2r"] = tally_to_json(sim.outage_2r);
    out["pr1"] = tally_to_json(sim.outage_r1);
    out["pr2"] = tally_to_json(sim.outage_r2);
  }
  j["empirical_outage"] = out;
  if (!sim.s3_exit_counts.empty()) j["s3_exit_counts"] = sim.s3_exit_counts;
  j["n_reps"] = sim.n_reps;
  return j.dump(2);
}

std::string optimal_report_to_json(const OptimalRateReport& report, Mode mode,
                                   std::optional<double> snr_db) {
  nlohmann::json j;
  j["mode"] = mode_name(mode);
  if (snr_db) j["snr_db"] = *snr_db;
  j["objective"] = report.objective == Objective::max_goodput ? "max-goodput" : "min-eb";
  j["r_star"] = report.r_star;
  j["value"] = report.value;
  j["bracket"] = {report.bracket_lo, report.bracket_hi};
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& [rate, value] : report.grid) {
    grid.push_back({{"rate", rate},
                    {"value", std::isfinite(value) ? nlohmann::json(value) : nlohmann::json()}});
  }
  j["grid"] = grid;
  return j.dump(2);
}

}  // namespace twrn
