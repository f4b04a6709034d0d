#pragma once

#include <stdexcept>
#include <string>

namespace evsharp {

// Every failure the library raises carries one of these kinds. The CLI maps
// each kind to a distinct exit code, so keep the list stable.
enum class ErrorKind {
  Io,
  InvalidInterval,
  Bounds,
  Coverage,
  OutOfRange,
  DimensionMismatch,
  EmptyWindow,
  InvalidInput,
  CalibrationImpossible,
  InternalConsistency,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& detail);

}  // namespace evsharp
