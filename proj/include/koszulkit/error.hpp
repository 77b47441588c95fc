#pragma once

#include <stdexcept>
#include <string>

namespace koszulkit {

enum class ErrorKind {
  UnsupportedRing,
  UnsupportedQuotient,
  RingMismatch,
  Inconclusive,
  NotIdempotent,
  ZeroInput,
  SupportNotVerified,
  InvalidArgument,
  Parse,
};

std::string to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(to_string(kind) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace koszulkit
