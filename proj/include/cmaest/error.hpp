#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmaest {

enum class ErrorCode {
  InvalidArgument,
  NoBracket,
  NonFinite,
  OrderOutOfRange,
  NegativeArgument,
  DegenerateParams,
  NegativeDensity,
  ZeroMass,
  GammaOutOfRange,
  BetaNotGreaterThanAlpha,
  HypothesisFails,
  GridTooShort,
  NonPositiveEps,
  IncompatiblePieces,
  NotStrictlyConvexPiece,
  DeltaSearchFailed,
  OutOfDomain,
  DerivativeMismatch,
  BadConfig,
  FileFormat,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to a diagnostic and exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cmaest
