#pragma once

#include <stdexcept>
#include <string>

namespace lopsim {

// A numerical invariant was violated (non-unitary transfer matrix, broken
// state normalization, ...). Distinct from std::invalid_argument, which is
// reserved for malformed call arguments.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what_arg)
      : std::runtime_error(what_arg) {}
};

// Circuit text was rejected. Carries the 1-based source position of the
// offending token; what() includes it already.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string message)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(std::move(message)) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

}  // namespace lopsim
