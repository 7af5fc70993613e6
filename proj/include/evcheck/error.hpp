#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evcheck {

enum class ErrorKind {
  Syntax,
  Sort,
  UnknownVariable,
  UnboundVariable,
  SortMismatch,
  BoundExceeded,
  StateExplosion,
  OpenFormula,
  InvalidFormula,
  ActionNotInAlphabet,
  IllFormed,
  Shape,
  UnknownInstance,
  WrongPolarity,
  DanglingEvidence,
  Internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message,
              ErrorKind kind = ErrorKind::Syntax);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

inline bool is_resource_error(ErrorKind kind) {
  return kind == ErrorKind::BoundExceeded || kind == ErrorKind::StateExplosion;
}

}  // namespace evcheck
