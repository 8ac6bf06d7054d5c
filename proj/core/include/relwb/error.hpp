#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relwb {

/// Malformed or inconsistent input: out-of-range elements, signature
/// mismatches, unmet preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search ran out of its node budget before reaching a verdict.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction on a finite fragment needed elements (preimages, images)
/// that the fragment does not contain.
class InsufficientFragment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction produced output that violates the property it is
/// supposed to guarantee. Never thrown when the preconditions hold.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Syntax or reference error in the workbench text format.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace relwb
