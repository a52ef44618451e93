#pragma once

#include <stdexcept>
#include <string>

namespace projwalk {

// Base class for all domain errors thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// project() on a vector of norm below the underflow floor.
struct ZeroVectorError : Error {
  using Error::Error;
};

// Matrix construction rejected (singular or condition number > 1e12).
struct IllConditionedError : Error {
  using Error::Error;
};

// Cohomological identity evaluated where exactly one bracket vanishes.
struct DegeneratePairError : Error {
  using Error::Error;
};

// oq_generators called with a signature p outside [1, d-1] or d < 3.
struct BadSignatureError : Error {
  using Error::Error;
};

// Tail fit attempted with fewer than the required exceedance events.
struct InsufficientCountsError : Error {
  using Error::Error;
};

// An operation requiring sigma > 0 received a degenerate value.
struct DegenerateSigmaError : Error {
  using Error::Error;
};

// Power iteration cannot separate the dominant eigenvalue.
struct NoGapError : Error {
  using Error::Error;
};

// Too much eigenmeasure mass sits at a vanishing bracket for s < 0.
struct SingularBracketError : Error {
  using Error::Error;
};

// Every candidate offset collides with a detected atom.
struct NoValidOffsetError : Error {
  using Error::Error;
};

// Oscillatory quadrature step bound cannot be met within the budget.
struct UnresolvedPhaseError : Error {
  using Error::Error;
};

// Bad experiment configuration; the message names the offending key.
struct ConfigError : Error {
  using Error::Error;
};

// Malformed data file; carries the 1-based line number.
struct FormatError : Error {
  FormatError(const std::string& msg, long line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
  explicit FormatError(const std::string& msg) : Error(msg), line_number(0) {}
  long line_number;
};

}  // namespace projwalk
