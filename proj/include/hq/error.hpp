#pragma once

#include <stdexcept>
#include <string>

namespace hq {

/// Base class for every failure raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A weight that has to be inverted is zero (either formally or after
/// specialization).
class ZeroWeightError : public Error {
 public:
  using Error::Error;
};

/// Every specialization attempt hit a pole.
class SpecializationError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed: a result that must be an integer
/// was not, two specializations disagreed, or a pole failed to cancel.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// Caller supplied arguments outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parse failure carrying a 1-based column.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int column)
      : Error(what + " at column " + std::to_string(column)), column_(column) {}
  int column() const noexcept { return column_; }

 private:
  int column_;
};

}  // namespace hq
