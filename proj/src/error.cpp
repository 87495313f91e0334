#include "coremark/error.hpp"

namespace coremark {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::NoTextFound: return "NoTextFound";
    case ErrorCode::LineTooNarrow: return "LineTooNarrow";
    case ErrorCode::NoBlackPixels: return "NoBlackPixels";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::TooFewLines: return "TooFewLines";
    case ErrorCode::EmptyBaseline: return "EmptyBaseline";
    case ErrorCode::InfeasibleTarget: return "InfeasibleTarget";
    case ErrorCode::CannotReduce: return "CannotReduce";
    case ErrorCode::CannotExpand: return "CannotExpand";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::InsufficientCapacity: return "InsufficientCapacity";
    case ErrorCode::InsufficientBits: return "InsufficientBits";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::KeyTooShort: return "KeyTooShort";
    case ErrorCode::PayloadTooLong: return "PayloadTooLong";
    case ErrorCode::ChecksumFailed: return "ChecksumFailed";
    case ErrorCode::UnknownGlyph: return "UnknownGlyph";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace coremark
