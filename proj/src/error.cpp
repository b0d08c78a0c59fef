#include "lamens/error.hpp"

namespace lamens {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::PicardDiverged: return "PicardDiverged";
    case ErrorKind::StepTooSmall: return "StepTooSmall";
    case ErrorKind::BlowUpDetected: return "BlowUpDetected";
    case ErrorKind::NonPositiveTheta: return "NonPositiveTheta";
    case ErrorKind::InsufficientEntries: return "InsufficientEntries";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::BadMagic: return "BadMagic";
    case ErrorKind::TruncatedPayload: return "TruncatedPayload";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace lamens
