#include "sampling.hpp"

#include <algorithm>
#include <functional>

namespace bcdual::cli {

RVector sample_chamber(std::mt19937_64& rng, int n) {
  // Draw n points in a shortened interval, sort, then spread them by the gap.
  const double span = kSampleHigh - kSampleLow - kSampleGap * (n - 1);
  std::uniform_real_distribution<double> u(0.0, span);
  std::vector<double> raw(n);
  for (double& x : raw) x = u(rng);
  std::sort(raw.begin(), raw.end());
  RVector out(n);
  for (int i = 0; i < n; ++i) out(n - 1 - i) = kSampleLow + raw[i] + kSampleGap * i;
  return out;
}

RVector sample_momenta(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-kMomentumBound, kMomentumBound);
  RVector out(n);
  for (int i = 0; i < n; ++i) out(i) = u(rng);
  return out;
}

PhasePointS sample_point_s(std::mt19937_64& rng, int n) {
  PhasePointS pt;
  pt.q = sample_chamber(rng, n);
  pt.p = sample_momenta(rng, n);
  return pt;
}

PhasePointR sample_point_r(std::mt19937_64& rng, int n) {
  PhasePointR pt;
  pt.lambda = sample_chamber(rng, n);
  pt.theta = sample_momenta(rng, n);
  return pt;
}

PhasePoint sample_point(std::uint64_t seed, int n, ModelKind model) {
  std::mt19937_64 rng(seed);
  if (model == ModelKind::sutherland) return sample_point_s(rng, n);
  return sample_point_r(rng, n);
}

ModelParams sample_params(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> mu(-2.0, -0.3), nu(0.2, 2.5), kappa(0.0, 2.0);
  ModelParams p;
  p.mu = mu(rng);
  p.nu = nu(rng);
  p.kappa = kappa(rng);
  p.n = n;
  return p;
}

std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x); };
  const auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(index), hi(index)};
  return std::mt19937_64(seq);
}

}  // namespace bcdual::cli
