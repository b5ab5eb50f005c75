#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topicforge {

/// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition (bad argument, out-of-range index).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input data is unusable: missing files, empty corpora, inconsistent tables.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Malformed line in a text file format.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace topicforge
