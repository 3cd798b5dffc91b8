#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace statespace {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  DomainError,
  DimMismatch,
  BadSiteSet,
  SizeCap,
  SiteCountMismatch,
  InvalidState,
  NotIsometry,
  GelfandIdeal,
  NotSupported,
  RefinementExhausted,
  FactorizationFailure,
  NotUnit,
  SingularOverlap,
  DegenerateGround,
  NotGapped,
  Overflow,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace statespace
