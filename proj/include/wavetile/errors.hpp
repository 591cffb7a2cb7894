#pragma once

#include <stdexcept>
#include <string>

namespace wavetile {

// Base class for all library errors. The CLI maps these to exit code 2.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// exponent_locate / locate on x <= 0.
struct NonPositiveError : Error {
  using Error::Error;
};

// Dyadic exponent left the configured range.
struct ExponentRangeError : Error {
  using Error::Error;
};

// Table-backed pairing queried outside the stored table.
struct TableMissError : Error {
  using Error::Error;
};

// unpair called with an index < 1.
struct BadIndexError : Error {
  using Error::Error;
};

// A step profile has overlapping pieces.
struct OverlapError : Error {
  using Error::Error;
};

// Admissibility integral over a piece whose closure contains 0.
struct SingularAtZeroError : Error {
  using Error::Error;
};

// A frequency argument that must be nonzero was zero.
struct ZeroFrequencyError : Error {
  using Error::Error;
};

// Sampling identity requested at a scale the profiles are not limited to.
struct NotBandLimitedError : Error {
  using Error::Error;
};

// Quadrature grid is empty, inverted, or reaches nonpositive scales.
struct BadGridError : Error {
  using Error::Error;
};

// Malformed external input (JSON, CLI literals).
struct ParseError : Error {
  using Error::Error;
};

}  // namespace wavetile
