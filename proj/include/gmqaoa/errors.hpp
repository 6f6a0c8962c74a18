#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmqaoa {

// Malformed or semantically invalid input (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in a text format, tagged with a 1-based position.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError("line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Structurally parsed input that breaks a domain invariant
// (self-loop, duplicate edge, out-of-range literal, ...).
class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

// Dense size or oracle cap exceeded (CLI exit code 3 for oracle caps).
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Initial state whose level projections carry a phase that cannot be
// absorbed into real coefficients.
class ComplexOverlapError : public InputError {
 public:
  ComplexOverlapError() : InputError("complex-overlap") {}
  explicit ComplexOverlapError(const std::string& detail)
      : InputError("complex-overlap: " + detail) {}
};

}  // namespace gmqaoa
