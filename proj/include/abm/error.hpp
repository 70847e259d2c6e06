#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abm {

enum class ErrorKind {
  InsufficientData,
  InvalidPrice,
  InvalidKind,
  DegenerateSample,
  InsufficientTail,
  DegenerateTail,
  LagTooLarge,
  InsufficientPositivePoints,
  DegenerateFit,
  NoAgents,
  NumericalBlowup,
  ConfigError,
  SchemaError,
  EmptyWindow,
  DuplicateDate,
  IoError,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Library error; `kind()` identifies the failure class, `what()` carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  /// Message without the kind prefix.
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::InvalidPrice: return "InvalidPrice";
    case ErrorKind::InvalidKind: return "InvalidKind";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::InsufficientTail: return "InsufficientTail";
    case ErrorKind::DegenerateTail: return "DegenerateTail";
    case ErrorKind::LagTooLarge: return "LagTooLarge";
    case ErrorKind::InsufficientPositivePoints: return "InsufficientPositivePoints";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::NoAgents: return "NoAgents";
    case ErrorKind::NumericalBlowup: return "NumericalBlowup";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::DuplicateDate: return "DuplicateDate";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace abm
