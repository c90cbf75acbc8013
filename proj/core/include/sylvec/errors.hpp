#pragma once

#include <stdexcept>
#include <string>

namespace sylvec {

// Bad flags, hyperparameters, or an unusable corpus-derived configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed caller input: out-of-range ids, empty sequences, shape mismatches.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An evaluation that is undefined on the given data (constant sequence,
// zero vector, too few usable pairs).
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative routine failed to converge; carries the iteration count in what().
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Query contains a syllable the model has never seen.
struct UnknownSyllableError : InputError {
  UnknownSyllableError(const std::string& message, char32_t scalar)
      : InputError(message), syllable(scalar) {}
  char32_t syllable;
};

// Word-level model asked for a vector of an out-of-vocabulary word.
struct NoRepresentationError : InputError {
  using InputError::InputError;
};

}  // namespace sylvec
