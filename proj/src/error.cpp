#include "mrlp/error.hpp"

namespace mrlp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidBank: return "InvalidBank";
    case ErrorKind::BankRejected: return "BankRejected";
    case ErrorKind::NonSimpleEigenvalue: return "NonSimpleEigenvalue";
    case ErrorKind::DepthOverflow: return "DepthOverflow";
    case ErrorKind::DepthMismatch: return "DepthMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::ResolutionExhausted: return "ResolutionExhausted";
    case ErrorKind::AxisOutOfRange: return "AxisOutOfRange";
    case ErrorKind::LevelOverflow: return "LevelOverflow";
    case ErrorKind::NonProductPattern: return "NonProductPattern";
    case ErrorKind::BreakpointHit: return "BreakpointHit";
    case ErrorKind::TooManyTerms: return "TooManyTerms";
    case ErrorKind::AlphaTooSmall: return "AlphaTooSmall";
    case ErrorKind::DegenerateF: return "DegenerateF";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace mrlp
