#pragma once

#include <stdexcept>
#include <string>

namespace vintagecheck {

// Root of every error the library throws. The CLI maps all of these to exit
// code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A data-level invariant was violated, e.g. a duplicate (key, level) tuple.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Caller supplied inconsistent parameters: missing key column, half of a
// hierarchy configuration, an unknown threshold name.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input text could not be read or parsed: unreadable file, ragged row,
// corrupt numeric cell.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A configuration value violates a documented invariant (hierarchy cycle,
// rank gap, threshold out of range).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace vintagecheck
