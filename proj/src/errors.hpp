#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mtp {

/// Invalid argument or construction parameter.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Composition the engine refuses to define (e.g. "not" of a powered set).
struct UnsupportedError : std::logic_error {
  using std::logic_error::logic_error;
};

/// No rule matched the input / the reasoning result is empty.
struct NoMatchError : std::runtime_error {
  explicit NoMatchError(const std::string& what,
                        std::vector<double> movements = {})
      : std::runtime_error(what), movements(std::move(movements)) {}

  /// Per-rule |dx_j| values where the failing operation computed them.
  std::vector<double> movements;
};

/// Degenerate numeric situation: zero weight sum, coincident distances,
/// zero target in a relative metric.
struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed document or data file.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")"
                                : what),
        line(line) {}

  std::size_t line;  // 1-based; 0 when not tied to a specific line
};

/// Training produced a non-finite loss or parameter.
struct TrainingDiverged : std::runtime_error {
  TrainingDiverged(const std::string& what, long iteration)
      : std::runtime_error(what + " at iteration " +
                           std::to_string(iteration)),
        iteration(iteration) {}

  long iteration;
};

}  // namespace mtp
