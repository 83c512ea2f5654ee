#pragma once

#include <stdexcept>
#include <string>

namespace vdwcp {

// Error taxonomy, mirrored by the CLI exit codes:
//   ConfigError      -> 2  (bad user input: parameters, config keys, file contents)
//   AccuracyError    -> 3  (a numerical tolerance could not be met within budget)
//   ConsistencyError -> 4  (two internal routes to the same number disagree)
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct AccuracyError : Error {
  AccuracyError(const std::string& what, double achieved, double requested)
      : Error(what + " (achieved " + std::to_string(achieved) + ", requested " +
              std::to_string(requested) + ")"),
        achieved_error(achieved),
        requested_tolerance(requested) {}
  explicit AccuracyError(const std::string& what) : Error(what) {}
  double achieved_error = 0.0;
  double requested_tolerance = 0.0;
};

struct ConsistencyError : Error {
  using Error::Error;
};

// A least-squares extrapolation had too few or degenerate inputs. A kind of
// configuration error: the caller chose the design points.
struct FitError : ConfigError {
  using ConfigError::ConfigError;
};

// A Monte Carlo displacement left the tabulated propagator envelope. The
// envelope is sized so this is vanishingly rare; silently extrapolating the
// table would corrupt the estimate, so it is an error instead.
struct TableRangeError : ConsistencyError {
  using ConsistencyError::ConsistencyError;
};

}  // namespace vdwcp
