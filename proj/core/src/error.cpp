#include "fci/error.hpp"

namespace fci {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::PrecisionMismatch: return "PrecisionMismatch";
    case ErrorCode::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::NotAPGroup: return "NotAPGroup";
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::NonPeriodic: return "NonPeriodic";
    case ErrorCode::InfiniteGroup: return "InfiniteGroup";
    case ErrorCode::InfiniteBase: return "InfiniteBase";
    case ErrorCode::IncompatibleBase: return "IncompatibleBase";
    case ErrorCode::InvalidCocycle: return "InvalidCocycle";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::SpecInvalid: return "SpecInvalid";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

std::int64_t Cardinality::value() const {
  if (is_infinite()) raise(ErrorCode::InfiniteGroup, "cardinality is infinite");
  return value_;
}

std::string Cardinality::to_string() const {
  return is_infinite() ? std::string("infinite") : std::to_string(value_);
}

}  // namespace fci
