#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cubetest {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fewer vertices than a single cell of the requested dimension needs.
class EmptyComplexError : public Error {
 public:
  using Error::Error;
};

/// A cell description with repeated or out-of-range vertices.
class InvalidCellError : public Error {
 public:
  using Error::Error;
};

/// Dimension arguments outside the supported range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Requested size is outside the range where a result is defined or feasible.
class RangeError : public Error {
 public:
  using Error::Error;
};

class NotACocycleError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed; always a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cubetest
