#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uag {

enum class ErrorKind { parse, semantic, budget, internal };

/// Base of every error the library raises. The kind maps one-to-one onto
/// the CLI exit codes (1 parse, 2 semantic, 3 budget, 4 internal).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// An error tied to a position in input text. Positions are 1-based; 0
/// means "unknown".
class LocatedError : public Error {
 public:
  LocatedError(ErrorKind kind, const std::string& message, std::size_t line, std::size_t column)
      : Error(kind, format(message, line, column)), message_(message), line_(line), column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    std::string out;
    if (line != 0) out += std::to_string(line) + ":";
    if (column != 0) out += std::to_string(column) + ":";
    if (!out.empty()) out += " ";
    return out + message;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// Malformed input text.
class ParseError : public LocatedError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : LocatedError(ErrorKind::parse, message, line, column) {}

  /// Same error, shifted onto another line (used when a single-line parser
  /// runs inside a multi-line file).
  ParseError at_line(std::size_t line, std::size_t column_offset = 0) const {
    return ParseError(message(), line, column() == 0 ? 0 : column() + column_offset);
  }
};

/// Well-formed input that refers to something undefined or out of range.
class SemanticError : public LocatedError {
 public:
  explicit SemanticError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : LocatedError(ErrorKind::semantic, message, line, column) {}

  SemanticError at_line(std::size_t line, std::size_t column_offset = 0) const {
    return SemanticError(message(), line, column() == 0 ? 0 : column() + column_offset);
  }
};

/// A computation would exceed the configured size guard.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error(ErrorKind::budget, what) {}
};

/// A kernel invariant failed. Always a defect, never a user error.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorKind::internal, what) {}
};

}  // namespace uag
