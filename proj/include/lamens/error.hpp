#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lamens {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  PicardDiverged,
  StepTooSmall,
  BlowUpDetected,
  NonPositiveTheta,
  InsufficientEntries,
  UnknownKey,
  ConstraintViolation,
  BadMagic,
  TruncatedPayload,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures surface as this exception; kind() is the stable,
// machine-readable part and what() carries the human detail.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace lamens
