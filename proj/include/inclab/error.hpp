#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace inclab {

enum class Errc {
  CollinearPoints,
  Degenerate,
  CoincidentPoints,
  DegenerateShape,
  PoleOnObject,
  NotCoplanar,
  ProbeTooLarge,
  MissingParam,
  InvalidParam,
  BelowBase,
  EmptySuite,
  DegenerateSeries,
  CurveOnZeroSet,
  ExhaustedRetries,
  InvalidInstance,
};

std::string_view to_string(Errc code);

/// The single exception type thrown by the library for contract
/// violations on inputs. `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace inclab
