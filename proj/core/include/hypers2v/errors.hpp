#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypers2v {

/// Input data could not be used: malformed files, inconsistent labels,
/// degenerate datasets. The CLI maps this family to exit code 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace hypers2v
