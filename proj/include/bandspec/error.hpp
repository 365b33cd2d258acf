#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bandspec {

enum class ErrorCode {
  EmptyCycle,
  ZeroSubdiagonal,
  NonFiniteEntry,
  CycleTooLong,
  NegativeOffset,
  LambdaOnDiagonal,
  IndexOutOfRange,
  LengthNotMultipleOfL,
  InvalidWindow,
  InvalidArgument,
  UnsupportedFormat,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyCycle: return "EmptyCycle";
    case ErrorCode::ZeroSubdiagonal: return "ZeroSubdiagonal";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::CycleTooLong: return "CycleTooLong";
    case ErrorCode::NegativeOffset: return "NegativeOffset";
    case ErrorCode::LambdaOnDiagonal: return "LambdaOnDiagonal";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LengthNotMultipleOfL: return "LengthNotMultipleOfL";
    case ErrorCode::InvalidWindow: return "InvalidWindow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Thrown for every domain error in the library; `code()` identifies the failure.
class SpectralError : public std::runtime_error {
 public:
  SpectralError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bandspec
