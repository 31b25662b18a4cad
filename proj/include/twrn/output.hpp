#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twrn/markov.hpp"
#include "twrn/metrics.hpp"
#include "twrn/optimizer.hpp"
#include "twrn/simulator.hpp"

namespace twrn {

/// Flat row schema shared by every command. Absent fields serialize as empty
/// CSV cells; numeric fields carry 12 significant digits so emitted files
/// round-trip byte-for-byte.
struct OutputRecord {
  std::string mode;  ///< "af" | "df"
  std::optional<double> snr_db;
  std::optional<double> rate_bpshz;
  std::optional<double> p12, p21;
  std::optional<double> p1r, p2r, pr1, pr2;
  std::optional<double> goodput_bpshz;
  std::optional<double> normalized_rate;
  std::optional<double> eb_paper, eb_renewal;
  std::optional<double> eb_empirical;
  std::optional<double> goodput_empirical;
  std::string source;  ///< "analytic" | "mc"
  std::optional<double> stderr_goodput, stderr_eb;

  static const std::vector<std::string>& csv_header();
  std::string to_csv_row() const;
  static OutputRecord from_csv_row(const std::string& row);
};

/// 12-significant-digit canonical formatting used everywhere doubles are
/// emitted (idempotent under parse/re-serialize).
std::string format_double(double v);

std::string records_to_csv(const std::vector<OutputRecord>& records);
std::vector<OutputRecord> parse_csv(const std::string& text);

OutputRecord record_from_point(const SweepPoint& pt, MetricSource source);
OutputRecord record_from_sim(const NetworkConfig& cfg, Mode mode, double rate,
                             std::optional<double> snr_db, const SimResult& sim,
                             const PerformancePoint& analytic, EnergyUnits units);

std::string record_to_json(const OutputRecord& rec);
std::string sim_result_to_json(const SimResult& sim);
std::string optimal_report_to_json(const OptimalRateReport& report, Mode mode,
                                   std::optional<double> snr_db);

}  // namespace twrn
