#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gngshape {

enum class ErrorCode {
  InvalidArgument,
  UnsupportedFormat,
  CorruptFile,
  EmptyForeground,
  InsufficientForeground,
  EmptyGraph,
  NotConnected,
  DegenerateGraph,
  ZeroVector,
  UnknownVertex,
  DimensionMismatch,
  MissingRoot,
  UnlabeledItem,
  NoImages,
  RankOutOfRange,
  Io,
  InvariantViolation,
};

std::string_view to_string(ErrorCode code);

/// Library failure tagged with an ErrorCode.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace gngshape
