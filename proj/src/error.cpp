#include "evcheck/error.hpp"

namespace evcheck {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Sort: return "SortError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::StateExplosion: return "StateExplosion";
    case ErrorKind::OpenFormula: return "OpenFormula";
    case ErrorKind::InvalidFormula: return "InvalidFormula";
    case ErrorKind::ActionNotInAlphabet: return "ActionNotInAlphabet";
    case ErrorKind::IllFormed: return "IllFormed";
    case ErrorKind::Shape: return "ShapeError";
    case ErrorKind::UnknownInstance: return "UnknownInstance";
    case ErrorKind::WrongPolarity: return "WrongPolarity";
    case ErrorKind::DanglingEvidence: return "DanglingEvidence";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& message,
                         ErrorKind kind)
    : Error(kind, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace evcheck
