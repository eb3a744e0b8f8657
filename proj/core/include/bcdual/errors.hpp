#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bcdual {

enum class ErrorCode {
  NotHermitian,
  NotPaired,
  NotPositiveDefinite,
  DegenerateSpectrum,
  NoConvergence,
  Overflow,
  InvalidParams,
  InvalidCouplings,
  InvalidOrbitVector,
  NotInChamber,
  StepFailure,
  DomainError,
  GaugeFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library surfaces as this exception. `index` is set for
/// errors that point at a specific coordinate (NotInChamber) or sample.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<int> index = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<int> index() const noexcept { return index_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

  /// Same code and index, message extended by `context`.
  Error with_context(const std::string& context) const { return Error(code_, detail_ + " " + context, index_); }

 private:
  ErrorCode code_;
  std::optional<int> index_;
  std::string detail_;
};

}  // namespace bcdual
