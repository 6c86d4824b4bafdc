#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pext {

enum class ErrorCode {
  InvalidFace,
  FaceNotPresent,
  NotASubcomplex,
  AlreadyPresent,
  InconsistentIdentification,
  InvalidPartitioning,
  SizeLimitExceeded,
  NotAPermutation,
  InvalidParameters,
  NotPure,
  VoidComplex,
  InvalidResult,
  InvalidField,
  InternalDiagnostic,
};

std::string_view to_string(ErrorCode code);

/// Library error. Negative outcomes of decision procedures (not partitionable,
/// not shellable, no extender) are returned as values, never thrown.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pext
