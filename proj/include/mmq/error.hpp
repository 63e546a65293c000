#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mmq {

enum class ErrorKind {
  Unbounded,
  Empty,
  DimensionUnsupported,
  DimensionMismatch,
  Degenerate,
  Inconsistent,
  EmptySection,
  OriginOutside,
  ZeroDirection,
  NoExit,
  TooManyConstraints,
  InvalidInstance,
  GenerationFailed,
  Malformed,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::EmptySection: return "EmptySection";
    case ErrorKind::OriginOutside: return "OriginOutside";
    case ErrorKind::ZeroDirection: return "ZeroDirection";
    case ErrorKind::NoExit: return "NoExit";
    case ErrorKind::TooManyConstraints: return "TooManyConstraints";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::Malformed: return "Malformed";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable kind; every failure in the library
/// is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mmq
