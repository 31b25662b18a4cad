#pragma once

#include <stdexcept>
#include <string>

namespace twrn {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration input; the message names the offending field.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// A numerical routine failed to converge. Carries the partial estimate so
/// callers can inspect how far the computation got.
class NumericalError : public Error {
public:
  NumericalError(const std::string& msg, double partial, double error_estimate,
                 long evaluations)
      : Error(msg),
        partial_value(partial),
        error_estimate(error_estimate),
        evaluations(evaluations) {}

  double partial_value;
  double error_estimate;
  long evaluations;
};

/// Degenerate operating point: infinite energy, singular chain, no feasible
/// rate, or a metric that is undefined at the requested arguments.
class DegenerateError : public Error {
public:
  explicit DegenerateError(const std::string& msg) : Error(msg) {}
};

}  // namespace twrn
