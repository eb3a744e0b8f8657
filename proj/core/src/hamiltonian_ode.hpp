#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bcdual::detail {

/// Integrates x' = f(x) from t = 0 to every entry of `times` (either sign)
/// with an adaptive Dormand-Prince 5(4) pair. Returns one state per time, in
/// the order given. Throws StepFailure when the integrator stalls or the
/// state stops being finite.
using VectorField = std::function<void(const std::vector<double>& x, std::vector<double>& dxdt)>;

std::vector<std::vector<double>> integrate_at(const VectorField& field, const std::vector<double>& x0,
                                              std::span<const double> times, double tolerance);

}  // namespace bcdual::detail
