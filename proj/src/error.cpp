#include "avoidforge/error.hpp"

namespace avoidforge {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndefinedGate: return "UndefinedGate";
    case ErrorKind::BadArity: return "BadArity";
    case ErrorKind::DuplicateOutput: return "DuplicateOutput";
    case ErrorKind::MissingOutput: return "MissingOutput";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::DTooLarge: return "DTooLarge";
    case ErrorKind::SparsityTooLarge: return "SparsityTooLarge";
    case ErrorKind::WeightTooLarge: return "WeightTooLarge";
    case ErrorKind::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorKind::NotStretching: return "NotStretching";
    case ErrorKind::BadDims: return "BadDims";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::EmptySupport: return "EmptySupport";
    case ErrorKind::StretchViolation: return "StretchViolation";
    case ErrorKind::ReductionInvalid: return "ReductionInvalid";
    case ErrorKind::ProofInvalid: return "ProofInvalid";
    case ErrorKind::BoundViolated: return "BoundViolated";
    case ErrorKind::BadArgument: return "BadArgument";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

static std::string decorate(ErrorKind kind, const std::string& message, std::size_t line) {
  std::string out = to_string(kind);
  if (line != 0) out += " at line " + std::to_string(line);
  out += ": " + message;
  return out;
}

Error::Error(ErrorKind kind, const std::string& message, std::size_t line)
    : std::runtime_error(decorate(kind, message, line)), kind_(kind), message_(message), line_(line) {}

}  // namespace avoidforge
