#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace robmatch {

enum class ErrorKind {
  Usage,
  UnknownAgent,
  NonAdjacentSwap,
  InvalidMatching,
  AsymmetricAcceptability,
  DuplicateEntry,
  NoSuccessorDefined,
  InvalidInput,
  NotClosed,
  NotNearlyStable,
  TooLarge,
  Parse,
  Internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace robmatch
