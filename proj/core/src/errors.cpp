#include "bcdual/errors.hpp"

namespace bcdual {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPaired: return "NotPaired";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidCouplings: return "InvalidCouplings";
    case ErrorCode::InvalidOrbitVector: return "InvalidOrbitVector";
    case ErrorCode::NotInChamber: return "NotInChamber";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::GaugeFailure: return "GaugeFailure";
  }
  return "Unknown";
}

}  // namespace bcdual
