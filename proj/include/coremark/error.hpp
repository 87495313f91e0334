#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coremark {

enum class ErrorCode {
  UnsupportedFormat,
  CorruptFile,
  IoError,
  LengthMismatch,
  DimensionMismatch,
  ImageTooSmall,
  NoTextFound,
  LineTooNarrow,
  NoBlackPixels,
  EmptyDocument,
  TooFewLines,
  EmptyBaseline,
  InfeasibleTarget,
  CannotReduce,
  CannotExpand,
  OutOfBounds,
  InsufficientCapacity,
  InsufficientBits,
  InvalidParams,
  KeyTooShort,
  PayloadTooLong,
  ChecksumFailed,
  UnknownGlyph,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; `code()` is stable
// and is what the CLI maps onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coremark
