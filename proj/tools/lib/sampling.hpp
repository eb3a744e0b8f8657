#pragma once

#include <cstdint>
#include <random>

#include "config.hpp"

namespace bcdual::cli {

inline constexpr double kSampleLow = 0.1;
inline constexpr double kSampleHigh = 6.0;
inline constexpr double kSampleGap = 0.05;
inline constexpr double kMomentumBound = 2.0;

/// Descending coordinates in [0.1, 6] with neighbouring gaps >= 0.05.
RVector sample_chamber(std::mt19937_64& rng, int n);
RVector sample_momenta(std::mt19937_64& rng, int n);

PhasePointS sample_point_s(std::mt19937_64& rng, int n);
PhasePointR sample_point_r(std::mt19937_64& rng, int n);
PhasePoint sample_point(std::uint64_t seed, int n, ModelKind model);

/// mu in [-2, -0.3], nu in [0.2, 2.5], kappa in [0, 2]: the canonical regime.
ModelParams sample_params(std::mt19937_64& rng, int n);

/// Independent generator for sample `index` of stream `stream`, so sweeps
/// give the same points regardless of thread count or evaluation order.
std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace bcdual::cli
