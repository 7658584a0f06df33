#ifndef RAMSA_ERRORS_HPP
#define RAMSA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ramsa {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad caller input: dimension mismatch, NaN argument, invalid parameter.
struct InputError : Error {
  using Error::Error;
};

// Unknown problem or configuration name.
struct LookupError : Error {
  using Error::Error;
};

// The evaluation budget is exhausted.
struct BudgetError : Error {
  using Error::Error;
};

// A blackbox output was non-finite; carries the offending output index.
struct EvaluationError : Error {
  int output_index;
  EvaluationError(const std::string& msg, int index)
      : Error(msg), output_index(index) {}
};

// Truncation interval too narrow for stable sampling or mean evaluation.
struct DegenerateIntervalError : Error {
  using Error::Error;
};

// Hyperparameter selection failed (flat landscape, exhausted budget).
struct TuningError : Error {
  using Error::Error;
};

// Config file syntax or unknown-key failure.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace ramsa

#endif
