#include "evsharp/errors.hpp"

namespace evsharp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
      return "io";
    case ErrorKind::InvalidInterval:
      return "invalid-interval";
    case ErrorKind::Bounds:
      return "bounds";
    case ErrorKind::Coverage:
      return "coverage";
    case ErrorKind::OutOfRange:
      return "out-of-range";
    case ErrorKind::DimensionMismatch:
      return "dimension-mismatch";
    case ErrorKind::EmptyWindow:
      return "empty-window";
    case ErrorKind::InvalidInput:
      return "invalid-input";
    case ErrorKind::CalibrationImpossible:
      return "calibration-impossible";
    case ErrorKind::InternalConsistency:
      return "internal-consistency";
  }
  return "unknown";
}

void raise(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

}  // namespace evsharp
