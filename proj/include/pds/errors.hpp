#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pds {

/// Malformed or out-of-range input (bad vertex labels, empty files, bad sizes).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A text line that could not be parsed. Carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        message_(what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t line_;
};

/// Model parameters that would produce an edge probability outside [0, 1].
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem size outside what an operation supports (e.g. the factorial oracle).
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace pds
