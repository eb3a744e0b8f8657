#pragma once

#include <vector>

namespace bcdual {

/// Per-sample health record for a trajectory. `flagged` is set when any
/// residual exceeds the solver's declared diagnostic tolerance.
struct FlowDiagnostics {
  double spectral_drift = 0.0;  // max |spectral invariant(t) - spectral invariant(0)|
  double frame_residual = 0.0;  // unitarity residual of the recovered right frame
  double imag_residual = 0.0;   // largest imaginary part among extracted diagonals
  double gauge_residual = 0.0;  // off-diagonal magnitude mismatch (RSvD only)
  bool flagged = false;
};

template <typename Point>
struct Trajectory {
  std::vector<double> times;
  std::vector<Point> states;
  std::vector<FlowDiagnostics> diagnostics;  // empty for ODE trajectories
};

}  // namespace bcdual
