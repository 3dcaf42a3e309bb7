#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace repagg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input data: malformed files, out-of-range values, unknown ids.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A line of a ratings or scores file could not be parsed.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, std::string text, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  const std::string& text() const noexcept { return text_; }

 private:
  std::size_t line_;
  std::string text_;
};

class RangeError : public DataError {
 public:
  using DataError::DataError;
};

class EmptyInputError : public DataError {
 public:
  using DataError::DataError;
};

class LookupError : public DataError {
 public:
  using DataError::DataError;
};

/// Invalid parameters or configuration supplied by the caller.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace repagg
