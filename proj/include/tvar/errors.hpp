#pragma once

#include <stdexcept>
#include <string>

namespace tvar {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid path data (non-increasing times, NaN/Inf, length mismatch).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Invalid argument to a functional (negative c, non-positive p, bad window).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two paths that must share a time grid do not.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

// Invalid generator or experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// CSV/JSON parsing failure; carries the 1-based row number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long row) : Error(what), row_(row) {}
  explicit ParseError(const std::string& what) : Error(what), row_(-1) {}
  long row() const { return row_; }

 private:
  long row_;
};

}  // namespace tvar
