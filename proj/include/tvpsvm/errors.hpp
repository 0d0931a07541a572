#pragma once

#include <stdexcept>
#include <string>

namespace tvpsvm {

// Sampler or filter produced (or was fed) a non-finite / infeasible value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejection loop for a stationarity constraint exceeded its cap.
class StationarityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; message carries row/column location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested date is outside the available vintage coverage.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument to a library entry point (empty draw set, bad lengths, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// MCMC run aborted; carries the iteration at which it failed.
class AbortedRunError : public std::runtime_error {
 public:
  AbortedRunError(int iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

}  // namespace tvpsvm
