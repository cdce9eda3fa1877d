#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace landscape {

enum class ErrorKind {
  RankDeficient,
  DegenerateInput,
  ShapeMismatch,
  InstanceTooLarge,
  DegenerateData,
  BadLeak,
  TargetTooSmall,
  ZeroVector,
  ZeroColumn,
  DomainError,
  NonFinite,
  Parse,
  LabelDomain,
  Config,
  Io,
  VerificationFailed,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` carries the failure class
/// so front ends can map it to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures caused by the numbers rather than the invocation.
  bool is_numerical() const noexcept;

 private:
  ErrorKind kind_;
};

}  // namespace landscape
