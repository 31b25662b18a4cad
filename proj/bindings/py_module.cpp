#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twrn/channel.hpp"
#include "twrn/config.hpp"
#include "twrn/errors.hpp"
#include "twrn/markov.hpp"
#include "twrn/metrics.hpp"
#include "twrn/numerics.hpp"
#include "twrn/optimizer.hpp"
#include "twrn/output.hpp"
#include "twrn/rng.hpp"
#include "twrn/simulator.hpp"

namespace py = pybind11;
using namespace twrn;

PYBIND11_MODULE(_twrn, m) {
  m.doc() = "Two-way relay network performance toolkit (AF/DF, Rayleigh fading)";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ArithmeticError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<NetworkConfig>(m, "NetworkConfig")
      .def(py::init<>())
      .def_readwrite("p1", &NetworkConfig::p1)
      .def_readwrite("p2", &NetworkConfig::p2)
      .def_readwrite("pr", &NetworkConfig::pr)
      .def_readwrite("noise_power", &NetworkConfig::noise_power)
      .def_readwrite("k", &NetworkConfig::k)
      .def_readwrite("alpha", &NetworkConfig::alpha)
      .def_readwrite("bandwidth_hz", &NetworkConfig::bandwidth_hz)
      .def_readwrite("codeword_bits", &NetworkConfig::codeword_bits)
      .def_readwrite("seed", &NetworkConfig::seed)
      .def("validate", &NetworkConfig::validate)
      .def("__repr__", [](const NetworkConfig& c) { return config_to_json(c); });

  py::class_<DerivedParams>(m, "DerivedParams")
      .def_readonly("sigma1_sq", &DerivedParams::sigma1_sq)
      .def_readonly("sigma2_sq", &DerivedParams::sigma2_sq)
      .def_readonly("beta", &DerivedParams::beta)
      .def_readonly("snr1", &DerivedParams::snr1)
      .def_readonly("snr2", &DerivedParams::snr2)
      .def_readonly("snr_r", &DerivedParams::snr_r);

  m.def("derive_params", &derive_params, py::arg("cfg"));
  m.def("default_config", &default_config, py::arg("snr_db"));
  m.def("with_snr_db", &with_snr_db, py::arg("cfg"), py::arg("snr_db"));
  m.def("load_config_json", &load_config_json, py::arg("json_text"));
  m.def("load_config_file", &load_config_file, py::arg("path"));
  m.def("config_to_json", &config_to_json, py::arg("cfg"));

  py::enum_<Mode>(m, "Mode").value("af", Mode::af).value("df", Mode::df);
  py::enum_<EnergyUnits>(m, "EnergyUnits")
      .value("joules_per_bit", EnergyUnits::joules_per_bit)
      .value("paper_normalized", EnergyUnits::paper_normalized);
  py::enum_<EbVariant>(m, "EbVariant")
      .value("paper", EbVariant::paper)
      .value("renewal", EbVariant::renewal);
  py::enum_<MetricSource>(m, "MetricSource")
      .value("analytic", MetricSource::analytic)
      .value("monte_carlo", MetricSource::monte_carlo);
  py::enum_<Objective>(m, "Objective")
      .value("max_goodput", Objective::max_goodput)
      .value("min_eb", Objective::min_eb);

  py::class_<QuadratureResult>(m, "QuadratureResult")
      .def_readonly("value", &QuadratureResult::value)
      .def_readonly("abs_error_estimate", &QuadratureResult::abs_error_estimate)
      .def_readonly("evaluations", &QuadratureResult::evaluations);
  m.def("integrate_semi_infinite", &integrate_semi_infinite, py::arg("f"),
        py::arg("rel_tol") = 1e-9);
  m.def("golden_section_max", &golden_section_max, py::arg("f"), py::arg("lo"),
        py::arg("hi"), py::arg("tol"));

  py::class_<AfOutagePair>(m, "AfOutagePair")
      .def(py::init<>())
      .def_readwrite("p12", &AfOutagePair::p12)
      .def_readwrite("p21", &AfOutagePair::p21);
  py::class_<DfOutageProfile>(m, "DfOutageProfile")
      .def(py::init<>())
      .def_readwrite("p1r", &DfOutageProfile::p1r)
      .def_readwrite("p2r", &DfOutageProfile::p2r)
      .def_readwrite("pr1", &DfOutageProfile::pr1)
      .def_readwrite("pr2", &DfOutageProfile::pr2);

  m.def("cascade_cdf", &cascade_cdf, py::arg("x"), py::arg("a"), py::arg("mu1"),
        py::arg("mu2"), py::arg("rel_tol") = 1e-9);
  m.def("af_outage_pair", &af_outage_pair, py::arg("cfg"), py::arg("params"),
        py::arg("rate"));
  m.def("df_outage_profile", &df_outage_profile, py::arg("cfg"), py::arg("params"),
        py::arg("rate"));

  py::enum_<StationarySource>(m, "StationarySource")
      .value("chain_solved", StationarySource::chain_solved)
      .value("paper_closed_form", StationarySource::paper_closed_form);
  py::class_<TransitionMatrix>(m, "TransitionMatrix")
      .def_readonly("mode", &TransitionMatrix::mode)
      .def_readonly("n", &TransitionMatrix::n)
      .def_readonly("p", &TransitionMatrix::p)
      .def("at", [](const TransitionMatrix& t, std::size_t i, std::size_t j) {
        return t.at(i, j);
      });
  py::class_<StationaryDistribution>(m, "StationaryDistribution")
      .def_readonly("mode", &StationaryDistribution::mode)
      .def_readonly("pi", &StationaryDistribution::pi)
      .def_readonly("residual", &StationaryDistribution::residual)
      .def_readonly("source", &StationaryDistribution::source);
  py::class_<StationaryComparison>(m, "StationaryComparison")
      .def_readonly("per_state_diff", &StationaryComparison::per_state_diff)
      .def_readonly("linf", &StationaryComparison::linf)
      .def_readonly("s1_plus_s2_diff", &StationaryComparison::s1_plus_s2_diff);

  m.def("state_labels", &state_labels, py::arg("mode"));
  m.def("build_af_chain", &build_af_chain, py::arg("outage"));
  m.def("build_df_chain", &build_df_chain, py::arg("outage"));
  m.def("stationary", &stationary, py::arg("matrix"));
  m.def("df_stationary_paper", &df_stationary_paper, py::arg("outage"));
  m.def("compare_stationary", &compare_stationary, py::arg("a"), py::arg("b"));

  py::class_<PerformancePoint>(m, "PerformancePoint")
      .def_readonly("mode", &PerformancePoint::mode)
      .def_readonly("rate", &PerformancePoint::rate)
      .def_readonly("goodput", &PerformancePoint::goodput)
      .def_readonly("normalized_rate", &PerformancePoint::normalized_rate)
      .def_readonly("eb_paper", &PerformancePoint::eb_paper)
      .def_readonly("eb_renewal", &PerformancePoint::eb_renewal)
      .def_readonly("af_outage", &PerformancePoint::af_outage)
      .def_readonly("df_outage", &PerformancePoint::df_outage);

  m.def("goodput_af", &goodput_af, py::arg("rate"), py::arg("outage"));
  m.def("eb_af", &eb_af, py::arg("cfg"), py::arg("rate"), py::arg("outage"),
        py::arg("units") = EnergyUnits::joules_per_bit);
  m.def("goodput_df", &goodput_df, py::arg("rate"), py::arg("outage"), py::arg("pi"));
  m.def("eb_df_paper", &eb_df_paper, py::arg("cfg"), py::arg("rate"), py::arg("outage"),
        py::arg("pi_paper"), py::arg("units") = EnergyUnits::joules_per_bit);
  m.def("eb_df_renewal", &eb_df_renewal, py::arg("cfg"), py::arg("rate"),
        py::arg("outage"), py::arg("units") = EnergyUnits::joules_per_bit);
  m.def("normalized_rate", &normalized_rate, py::arg("goodput"), py::arg("rate"));
  m.def("af_point", &af_point, py::arg("cfg"), py::arg("params"), py::arg("rate"),
        py::arg("units") = EnergyUnits::joules_per_bit);
  m.def("df_point", &df_point, py::arg("cfg"), py::arg("params"), py::arg("rate"),
        py::arg("units") = EnergyUnits::joules_per_bit);

  py::class_<LinkTally>(m, "LinkTally")
      .def_readonly("attempts", &LinkTally::attempts)
      .def_readonly("failures", &LinkTally::failures)
      .def("frequency", &LinkTally::frequency)
      .def("stderr_frequency", &LinkTally::stderr_frequency);

  py::class_<SimResult>(m, "SimResult")
      .def_readonly("mode", &SimResult::mode)
      .def_readonly("slots", &SimResult::slots)
      .def_readonly("rounds", &SimResult::rounds)
      .def_readonly("bits_t1_to_t2", &SimResult::bits_t1_to_t2)
      .def_readonly("bits_t2_to_t1", &SimResult::bits_t2_to_t1)
      .def_readonly("energy", &SimResult::energy)
      .def_readonly("state_occupancy", &SimResult::state_occupancy)
      .def_readonly("empirical_goodput", &SimResult::empirical_goodput)
      .def_readonly("stderr_goodput", &SimResult::stderr_goodput)
      .def_readonly("empirical_eb", &SimResult::empirical_eb)
      .def_readonly("stderr_eb", &SimResult::stderr_eb)
      .def_readonly("outage_12", &SimResult::outage_12)
      .def_readonly("outage_21", &SimResult::outage_21)
      .def_readonly("outage_1r", &SimResult::outage_1r)
      .def_readonly("outage_2r", &SimResult::outage_2r)
      .def_readonly("outage_r1", &SimResult::outage_r1)
      .def_readonly("outage_r2", &SimResult::outage_r2)
      .def_readonly("s3_exit_counts", &SimResult::s3_exit_counts)
      .def_readonly("attempts_t1_to_t2", &SimResult::attempts_t1_to_t2)
      .def_readonly("attempts_t2_to_t1", &SimResult::attempts_t2_to_t1)
      .def_readonly("n_reps", &SimResult::n_reps)
      .def("delivered_bits", &SimResult::delivered_bits)
      .def("to_json", [](const SimResult& r) { return sim_result_to_json(r); });

  m.def("simulate_af", &simulate_af, py::arg("cfg"), py::arg("rate"),
        py::arg("n_rounds"), py::arg("seed"), py::arg("track_attempts") = false);
  m.def("simulate_df", &simulate_df, py::arg("cfg"), py::arg("rate"),
        py::arg("n_slots"), py::arg("seed"));
  m.def("run_replications", &run_replications, py::arg("cfg"), py::arg("mode"),
        py::arg("rate"), py::arg("per_rep_size"), py::arg("n_reps"),
        py::arg("master_seed"), py::arg("n_threads") = 1,
        py::call_guard<py::gil_scoped_release>());

  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("mode", &SweepSpec::mode)
      .def_readwrite("rate_min", &SweepSpec::rate_min)
      .def_readwrite("rate_max", &SweepSpec::rate_max)
      .def_readwrite("steps", &SweepSpec::steps)
      .def_readwrite("snr_db", &SweepSpec::snr_db)
      .def_readwrite("source", &SweepSpec::source)
      .def_readwrite("eb_variant", &SweepSpec::eb_variant)
      .def_readwrite("units", &SweepSpec::units)
      .def_readwrite("refine_tol", &SweepSpec::refine_tol)
      .def_readwrite("mc_size", &SweepSpec::mc_size)
      .def_readwrite("mc_reps", &SweepSpec::mc_reps)
      .def_readwrite("n_threads", &SweepSpec::n_threads);

  py::class_<SweepPoint>(m, "SweepPoint")
      .def_readonly("snr_db", &SweepPoint::snr_db)
      .def_readonly("point", &SweepPoint::point)
      .def_readonly("has_empirical", &SweepPoint::has_empirical)
      .def_readonly("goodput_empirical", &SweepPoint::goodput_empirical)
      .def_readonly("stderr_goodput", &SweepPoint::stderr_goodput)
      .def_readonly("eb_empirical", &SweepPoint::eb_empirical)
      .def_readonly("stderr_eb", &SweepPoint::stderr_eb);

  py::class_<OptimalRateReport>(m, "OptimalRateReport")
      .def_readonly("objective", &OptimalRateReport::objective)
      .def_readonly("r_star", &OptimalRateReport::r_star)
      .def_readonly("value", &OptimalRateReport::value)
      .def_readonly("bracket_lo", &OptimalRateReport::bracket_lo)
      .def_readonly("bracket_hi", &OptimalRateReport::bracket_hi)
      .def_readonly("grid", &OptimalRateReport::grid);

  m.def("sweep", &sweep, py::arg("cfg"), py::arg("spec"));
  m.def("optimal_rate", &optimal_rate, py::arg("cfg"), py::arg("spec"),
        py::arg("objective"));
  m.def("crossing_rate", &crossing_rate, py::arg("cfg"), py::arg("snr_db"),
        py::arg("rate_min") = 0.05, py::arg("rate_max") = 12.0, py::arg("tol") = 1e-9);
}
