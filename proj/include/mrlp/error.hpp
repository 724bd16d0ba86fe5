#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mrlp {

enum class ErrorKind {
  InvalidArgument,
  InvalidBank,
  BankRejected,
  NonSimpleEigenvalue,
  DepthOverflow,
  DepthMismatch,
  DimensionMismatch,
  BadExponent,
  ResolutionExhausted,
  AxisOutOfRange,
  LevelOverflow,
  NonProductPattern,
  BreakpointHit,
  TooManyTerms,
  AlphaTooSmall,
  DegenerateF,
  ParseError,
  IoError,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace mrlp
