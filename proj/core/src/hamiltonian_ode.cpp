#include "hamiltonian_ode.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <cstdio>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "bcdual/errors.hpp"

namespace bcdual::detail {

namespace odeint = boost::numeric::odeint;

namespace {

std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", t);
  return buf;
}

bool finite(const std::vector<double>& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

// Integrates along one direction; `grid` starts at 0 and is monotone. Steps
// are clipped so every grid time is hit exactly. The derivative is carried
// explicitly so a step is accepted only if both the new state and the
// derivative there are finite: dopri5 folds that derivative into its error
// estimate, and a NaN estimate would otherwise compare as "small enough".
void sweep(const VectorField& field, const std::vector<double>& x0, const std::vector<double>& grid, double tolerance,
           std::vector<std::vector<double>>& out) {
  using State = std::vector<double>;
  using Stepper = odeint::runge_kutta_dopri5<State>;
  using Checker = odeint::default_error_checker<double, Stepper::algebra_type, Stepper::operations_type>;
  // Error is weighed against |x| only; the default dt |dx/dt| term loosens
  // the test exactly where the field is largest.
  odeint::controlled_runge_kutta<Stepper> stepper(Checker(tolerance, tolerance, 1.0, 0.0));
  auto system = [&field](const State& s, State& ds, double /*t*/) { field(s, ds); };

  constexpr long kMaxAttempts = 2'000'000;
  const double direction = grid.back() >= 0.0 ? 1.0 : -1.0;
  State x = x0;
  State dxdt;
  system(x, dxdt, 0.0);
  if (!finite(dxdt)) throw Error(ErrorCode::StepFailure, "vector field is not finite at the initial point");
  double t = 0.0;
  double dt = direction * 1e-4;
  long attempts = 0;
  out.push_back(x0);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double target = grid[k];
    while (direction * (target - t) > 0.0) {
      if (++attempts > kMaxAttempts) {
        throw Error(ErrorCode::StepFailure, "step budget exhausted at t = " + format_time(t));
      }
      const bool clipped = direction * (t + dt - target) > 0.0;
      double trial_dt = clipped ? target - t : dt;
      State trial = x;
      State trial_dxdt = dxdt;
      double trial_t = t;
      const auto result = stepper.try_step(system, trial, trial_dxdt, trial_t, trial_dt);
      if (result == odeint::success && finite(trial) && finite(trial_dxdt)) {
        x = std::move(trial);
        dxdt = std::move(trial_dxdt);
        t = clipped ? target : trial_t;
        if (!clipped) dt = trial_dt;
      } else if (result == odeint::success) {
        dt = 0.5 * (clipped ? target - t : dt);
      } else {
        dt = trial_dt;
      }
      if (std::abs(dt) < 1e-14 * std::max(1.0, std::abs(t))) {
        throw Error(ErrorCode::StepFailure, "step size underflow at t = " + format_time(t));
      }
    }
    out.push_back(x);
  }
}

}  // namespace

std::vector<std::vector<double>> integrate_at(const VectorField& field, const std::vector<double>& x0,
                                              std::span<const double> times, double tolerance) {
  // Forward and backward grids, each anchored at t = 0.
  std::vector<std::size_t> order(times.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> fwd_idx, bwd_idx;
  for (std::size_t i : order) {
    if (!std::isfinite(times[i])) throw Error(ErrorCode::DomainError, "non-finite time");
    (times[i] >= 0.0 ? fwd_idx : bwd_idx).push_back(i);
  }
  std::sort(fwd_idx.begin(), fwd_idx.end(), [&](auto a, auto b) { return times[a] < times[b]; });
  std::sort(bwd_idx.begin(), bwd_idx.end(), [&](auto a, auto b) { return times[a] > times[b]; });

  std::vector<std::vector<double>> result(times.size());
  for (const auto* idx : {&fwd_idx, &bwd_idx}) {
    if (idx->empty()) continue;
    std::vector<double> grid{0.0};
    for (std::size_t i : *idx) grid.push_back(times[i]);
    std::vector<std::vector<double>> states;
    states.reserve(grid.size());
    sweep(field, x0, grid, tolerance, states);
    if (states.size() != grid.size()) {
      throw Error(ErrorCode::StepFailure, "integrator returned " + std::to_string(states.size()) + " of " +
                                              std::to_string(grid.size()) + " samples");
    }
    for (std::size_t k = 0; k < idx->size(); ++k) result[(*idx)[k]] = states[k + 1];
  }
  return result;
}

}  // namespace bcdual::detail
