#include "qmedian/error.hpp"

namespace qmedian {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::DisconnectedPair: return "DisconnectedPair";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::NotQuasiMedian: return "NotQuasiMedian";
    case ErrorKind::NotMedian: return "NotMedian";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::MixedGraphs: return "MixedGraphs";
    case ErrorKind::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorKind::PointedSplit: return "PointedSplit";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::MarginTooSmall: return "MarginTooSmall";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::NotCoarselySeparating: return "NotCoarselySeparating";
    case ErrorKind::NotCodimensionOne: return "NotCodimensionOne";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::PrerequisiteFailed: return "PrerequisiteFailed";
  }
  return "UnknownError";
}

}  // namespace qmedian
