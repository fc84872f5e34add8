#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmedian {

enum class ErrorKind {
  Parse,
  Validation,
  Disconnected,
  DisconnectedPair,
  SizeLimitExceeded,
  NotQuasiMedian,
  NotMedian,
  EmptySet,
  MixedGraphs,
  InternalInvariantViolation,
  PointedSplit,
  NotFound,
  MarginTooSmall,
  WindowTooSmall,
  NotCoarselySeparating,
  NotCodimensionOne,
  NotAutomorphism,
  PrerequisiteFailed,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library. The kind is what callers branch on;
// the message carries the witness in human-readable form.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace qmedian
