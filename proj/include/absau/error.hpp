#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace absau {

/// Malformed user input: bad syntax, undeclared symbols, bad theory files.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Syntax error with the 1-based column where parsing stopped.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t column)
      : InputError(what + " at column " + std::to_string(column)),
        column_(column) {}

  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// An internal invariant was violated. Always a bug, never bad input.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace absau
