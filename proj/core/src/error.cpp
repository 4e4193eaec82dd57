#include "pframes/error.hpp"

namespace pframes {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonFinite: return "NonFinite";
    case Errc::NotAFrame: return "NotAFrame";
    case Errc::NotParseval: return "NotParseval";
    case Errc::NotTight: return "NotTight";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::ZeroFrameVector: return "ZeroFrameVector";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InvalidMeasure: return "InvalidMeasure";
    case Errc::InvalidKernel: return "InvalidKernel";
    case Errc::TooLarge: return "TooLarge";
    case Errc::KTooLarge: return "KTooLarge";
    case Errc::DimensionExceedsTruncation: return "DimensionExceedsTruncation";
    case Errc::SingularGramian: return "SingularGramian";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::Overflow: return "Overflow";
    case Errc::SolverFailure: return "SolverFailure";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace pframes
