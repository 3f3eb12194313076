#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace avoidforge {

enum class ErrorKind {
  SyntaxError,
  UndefinedGate,
  BadArity,
  DuplicateOutput,
  MissingOutput,
  LengthMismatch,
  BudgetExceeded,
  IndexOutOfRange,
  ArityMismatch,
  DTooLarge,
  SparsityTooLarge,
  WeightTooLarge,
  BudgetTooSmall,
  NotStretching,
  BadDims,
  DimMismatch,
  EmptySupport,
  StretchViolation,
  ReductionInvalid,
  ProofInvalid,
  BoundViolated,
  BadArgument,
  Io,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library. `line` is the 1-based source line for
/// parse errors and 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::size_t line = 0);

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  /// The message without the kind and line prefix.
  const std::string& message() const noexcept { return message_; }
  /// Same error attached to a source line.
  Error at_line(std::size_t line) const { return Error(kind_, message_, line); }

 private:
  ErrorKind kind_;
  std::string message_;
  std::size_t line_;
};

}  // namespace avoidforge
