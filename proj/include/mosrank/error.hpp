#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mosrank {

// Bad arguments or malformed input data. Maps to CLI exit status 1.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A correlation was requested on a constant (fully tied) rank vector.
// Maps to CLI exit status 2.
class DegenerateCorrelation : public std::domain_error {
 public:
  DegenerateCorrelation()
      : std::domain_error("undefined correlation: rank vector has zero variance") {}
  using std::domain_error::domain_error;
};

// Parse failure in a dataset file; line() is 1-based and counts the header.
class DatasetError : public InvalidInput {
 public:
  DatasetError(const std::string& what, std::size_t line)
      : InvalidInput(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  // Same error with `prefix: ` prepended, e.g. the file name.
  DatasetError(const std::string& prefix, const DatasetError& inner)
      : InvalidInput(prefix + ": " + inner.what()), line_(inner.line()) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mosrank
