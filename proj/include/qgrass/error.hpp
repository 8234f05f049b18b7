#pragma once

#include <stdexcept>
#include <string>

namespace qgrass {

enum class ErrorCode {
  NotPrimePower,
  AmbientMismatch,
  TooLarge,
  DimensionOrder,
  ProfileInfeasible,
  HypothesisViolation,
  PreconditionViolation,
  ParseError,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DimensionOrder: return "DimensionOrder";
    case ErrorCode::ProfileInfeasible: return "ProfileInfeasible";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Internal invariant check, active in all build types.
#define QGRASS_CHECK(cond, msg)                                              \
  do {                                                                       \
    if (!(cond)) throw std::logic_error(std::string("internal: ") + (msg)); \
  } while (0)

}  // namespace qgrass
