#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pframes {

enum class Errc {
  DimensionMismatch,
  NonFinite,
  NotAFrame,
  NotParseval,
  NotTight,
  ZeroVector,
  ZeroFrameVector,
  IndexOutOfRange,
  InvalidArgument,
  InvalidMeasure,
  InvalidKernel,
  TooLarge,
  KTooLarge,
  DimensionExceedsTruncation,
  SingularGramian,
  LengthMismatch,
  Overflow,
  SolverFailure,
  ConfigError,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  Errc code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace pframes
