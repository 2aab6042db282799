#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pisdim {

enum class ErrorKind {
  SyntaxError,
  NotChainRing,
  LengthMismatch,
  DisconnectedRing,
  EmptyGraph,
  Disconnected,
  TooLarge,
  MalformedDocument,
  NotCovered,
  UnknownFormat,
};

std::string_view error_name(ErrorKind kind);

// Domain error raised by every library module. The CLI reports
// `error_name(kind())` followed by the message and exits with status 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NotChainRing: return "NotChainRing";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DisconnectedRing: return "DisconnectedRing";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::MalformedDocument: return "MalformedDocument";
    case ErrorKind::NotCovered: return "NotCovered";
    case ErrorKind::UnknownFormat: return "UnknownFormat";
  }
  return "Error";
}

}  // namespace pisdim
