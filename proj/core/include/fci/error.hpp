#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fci {

enum class ErrorCode {
  InvalidArgument,
  NotAUnit,
  PrecisionMismatch,
  PrecisionTooLow,
  GroupMismatch,
  NotAPGroup,
  OrderCapExceeded,
  NonPeriodic,
  InfiniteGroup,
  InfiniteBase,
  IncompatibleBase,
  InvalidCocycle,
  Inconsistent,
  SpecInvalid,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI exit-status mapping) can branch on the kind of error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

/// Default bound on the order of any group that is enumerated element by element.
inline constexpr std::int64_t kDefaultOrderCap = std::int64_t{1} << 20;

/// A group order or subgroup index that may be infinite.
class Cardinality {
 public:
  static constexpr Cardinality finite(std::int64_t n) { return Cardinality(n); }
  static constexpr Cardinality infinite() { return Cardinality(-1); }

  constexpr bool is_finite() const { return value_ >= 0; }
  constexpr bool is_infinite() const { return value_ < 0; }
  std::int64_t value() const;

  std::string to_string() const;

  friend constexpr bool operator==(Cardinality, Cardinality) = default;

 private:
  constexpr explicit Cardinality(std::int64_t v) : value_(v) {}
  std::int64_t value_;
};

}  // namespace fci
