#include "bcdual/sutherland.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>
#include <vector>

#include "bcdual/errors.hpp"
#include "hamiltonian_ode.hpp"

namespace bcdual::sutherland {

namespace {

const Complex kI(0.0, 1.0);

double inv_sinh_sq(double x) {
  const double s = std::sinh(x);
  return 1.0 / (s * s);
}

// d/dx sinh(x)^-2
double d_inv_sinh_sq(double x) {
  const double s = std::sinh(x);
  return -2.0 * std::cosh(x) / (s * s * s);
}

}  // namespace

LaxS lax(const ModelParams& params, const PhasePointS& pt) {
  model::validate(params);
  model::require_point(params, pt);
  const int n = params.n;
  const auto& q = pt.q;

  CMatrix a(n, n);
  CMatrix b(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (r == c) {
        a(r, c) = pt.p(c);
        b(r, c) = kI * (params.nu / std::sinh(2.0 * q(c)) + params.kappa / std::tanh(2.0 * q(c)));
      } else {
        a(r, c) = -kI * params.mu / std::sinh(q(r) - q(c));
        b(r, c) = kI * params.mu / std::sinh(q(r) + q(c));
      }
    }
  }

  CMatrix lp(2 * n, 2 * n);
  lp << a, b, -b, -a;
  CMatrix full = lp - kI * params.kappa * matkit::swap_matrix(n);
  return LaxS{std::move(full),
              matkit::StructuredMatrix(std::move(lp), matkit::Tag::hermitian | matkit::Tag::c_paired_anti),
              std::move(a), std::move(b)};
}

double hamiltonian_s(const SutherlandCouplings& g, const PhasePointS& pt) {
  model::require_chamber(pt.q);
  const int n = pt.n();
  const auto& q = pt.q;
  double h = 0.5 * pt.p.squaredNorm();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      h += g.g_sq * (inv_sinh_sq(q(a) - q(b)) + inv_sinh_sq(q(a) + q(b)));
    }
    h += g.g1_sq * inv_sinh_sq(q(a)) + g.g2_sq * inv_sinh_sq(2.0 * q(a));
  }
  return h;
}

double hamiltonian_s(const ModelParams& params, const PhasePointS& pt) {
  model::require_point(params, pt);
  return hamiltonian_s(model::couplings_from_params(params), pt);
}

std::pair<RVector, RVector> hamiltonian_s_gradient(const SutherlandCouplings& g, const PhasePointS& pt) {
  const int n = pt.n();
  const auto& q = pt.q;
  RVector dq = RVector::Zero(n);
  for (int c = 0; c < n; ++c) {
    for (int b = 0; b < n; ++b) {
      if (b == c) continue;
      dq(c) += g.g_sq * (d_inv_sinh_sq(q(c) - q(b)) + d_inv_sinh_sq(q(c) + q(b)));
    }
    dq(c) += g.g1_sq * d_inv_sinh_sq(q(c)) + 2.0 * g.g2_sq * d_inv_sinh_sq(2.0 * q(c));
  }
  return {dq, pt.p};
}

SpectralDataS spectral_data(const ModelParams& params, const PhasePointS& pt) {
  const LaxS l = lax(params, pt);
  const int n = params.n;
  const matkit::SvdTriple svd = matkit::svd_square(l.A + l.B);

  const double kappa = std::abs(params.kappa);
  const double scale = std::max(svd.s(0), 1.0);
  if (!(svd.s(n - 1) > kappa + matkit::kGapTol * scale)) {
    throw Error(ErrorCode::DegenerateSpectrum,
                "smallest singular value " + std::to_string(svd.s(n - 1)) + " does not exceed |kappa|", n - 1);
  }
  for (int c = 0; c + 1 < n; ++c) {
    if (svd.s(c) - svd.s(c + 1) < matkit::kGapTol * scale) {
      throw Error(ErrorCode::DegenerateSpectrum, "repeated singular value", c);
    }
  }

  SpectralDataS out;
  out.k.resize(2 * n, 2 * n);
  out.k << svd.v + svd.u, svd.v - svd.u, svd.v - svd.u, svd.v + svd.u;
  out.k *= 0.5;
  out.s = svd.s;
  out.lambda_hat = ((svd.s.array() - kappa) * (svd.s.array() + kappa)).sqrt().matrix();
  return out;
}

RVector lax_spectrum_direct(const ModelParams& params, const PhasePointS& pt) {
  const LaxS l = lax(params, pt);
  Eigen::ComplexEigenSolver<CMatrix> solver(l.L, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "complex eigensolver did not converge on L");
  }
  RVector values = solver.eigenvalues().real();
  std::sort(values.data(), values.data() + values.size(), std::greater<>());
  return values;
}

namespace {

// Largest t * lambda_hat_1 covered by one projection step. The flow factor
// expm(t L / 2) then has condition number of order e^4, so the singular
// values of the step matrix stay accurate however far the particles spread.
constexpr double kStepAction = 4.0;

struct ProjectionStep {
  PhasePointS state;
  FlowDiagnostics diag;
};

// Projection method over one step of length dt anchored at `from`:
// y = e^{Q} expm(dt L / 2) has singular values e^{+-q(dt)}, and its right
// singular vectors are eta_R = y^-1 eta_L e^{Q(dt)}.
ProjectionStep project(const ModelParams& params, const PhasePointS& from, double dt) {
  const int n = params.n;
  const CMatrix l = lax(params, from).L;
  const RVector exp_q = model::doubled(from.q).array().exp().matrix();
  const CMatrix y = exp_q.asDiagonal() * matkit::expm((0.5 * dt) * l);
  // y* is column graded by e^{Q}; one-sided Jacobi keeps every singular value
  // to full relative precision, where eigenvalues of y y* would not.
  const matkit::SvdTriple svd = matkit::svd_relative(y.adjoint());
  const RVector& sv = svd.s;

  if (!(sv(n - 1) > 1.0) || sv(n - 1) - 1.0 / sv(n - 1) < matkit::kGapTol * sv(n - 1)) {
    throw Error(ErrorCode::DegenerateSpectrum, "position reached the wall q = 0", n - 1);
  }
  for (int c = 0; c + 1 < n; ++c) {
    if (sv(c) - sv(c + 1) < matkit::kGapTol * sv(c)) {
      throw Error(ErrorCode::DegenerateSpectrum, "positions collided", c);
    }
  }

  // Gauge rule: column n + c is C times column c.
  const CMatrix c_swap = matkit::swap_matrix(n);
  CMatrix eta_r(2 * n, 2 * n);
  eta_r.leftCols(n) = svd.u.leftCols(n);
  eta_r.rightCols(n) = c_swap * svd.u.leftCols(n);
  const CMatrix conj = eta_r.adjoint() * l * eta_r;

  ProjectionStep out;
  out.state.q = sv.head(n).array().log().matrix();
  out.state.p.resize(n);
  for (int c = 0; c < n; ++c) {
    out.state.p(c) = conj(c, c).real();
    out.diag.imag_residual = std::max({out.diag.imag_residual, std::abs(conj(c, c).imag()),
                                       std::abs(conj(n + c, n + c).real() + out.state.p(c))});
  }
  out.diag.frame_residual = matkit::unitarity_residual(eta_r);
  return out;
}

}  // namespace

TrajectoryS solve_algebraic(const ModelParams& params, const PhasePointS& pt0, std::span<const double> times,
                            const AlgebraicOptions& options) {
  const SpectralDataS spec0 = spectral_data(params, pt0);
  const int n = params.n;
  const double max_step = kStepAction / std::max(spec0.lambda_hat(0), 1e-300);
  for (const double t : times) {
    if (!std::isfinite(t)) throw Error(ErrorCode::DomainError, "non-finite time");
  }

  TrajectoryS traj;
  traj.times.assign(times.begin(), times.end());
  traj.states.resize(times.size());
  traj.diagnostics.resize(times.size());

  // The flow is autonomous, so the state at t is reached by chaining short
  // projection steps, forward for t > 0 and backward for t < 0.
  std::vector<std::size_t> order(times.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
  const auto first_forward =
      std::find_if(order.begin(), order.end(), [&](std::size_t k) { return times[k] >= 0.0; });
  std::vector<std::size_t> backward(std::make_reverse_iterator(first_forward), order.rend());
  std::vector<std::size_t> forward(first_forward, order.end());

  for (const auto* chain : {&forward, &backward}) {
    PhasePointS state = pt0;
    FlowDiagnostics last;
    double clock = 0.0;
    for (const std::size_t k : *chain) {
      const double t = times[k];
      try {
        const double span = t - clock;
        const int steps = static_cast<int>(std::ceil(std::abs(span) / max_step));
        for (int r = 0; r < steps; ++r) {
          ProjectionStep step = project(params, state, span / steps);
          state = std::move(step.state);
          last = step.diag;
        }
        clock = t;

        PhasePointS out = state;
        if (options.form == FlowForm::non_hermitian) {
          // Cross-check positions from the single-anchor similar form.
          const CMatrix flow = matkit::expm((0.5 * t) * lax(params, pt0).L);
          const CMatrix similar =
              (2.0 * model::doubled(pt0.q)).array().exp().matrix().asDiagonal() * flow * flow.adjoint();
          Eigen::ComplexEigenSolver<CMatrix> solver(similar, false);
          if (solver.info() != Eigen::Success) {
            throw Error(ErrorCode::NoConvergence, "eigensolver failed on the non-Hermitian flow matrix");
          }
          RVector values = solver.eigenvalues().real();
          std::sort(values.data(), values.data() + values.size(), std::greater<>());
          out.q = 0.5 * values.head(n).array().log().matrix();
        }

        FlowDiagnostics diag = last;
        const SpectralDataS spec_t = spectral_data(params, out);
        diag.spectral_drift = (spec_t.lambda_hat - spec0.lambda_hat).cwiseAbs().maxCoeff();
        diag.flagged = diag.frame_residual > options.diagnostic_tol || diag.imag_residual > options.diagnostic_tol ||
                       diag.spectral_drift > options.diagnostic_tol;
        traj.states[k] = std::move(out);
        traj.diagnostics[k] = diag;
      } catch (const Error& e) {
        throw e.with_context("at t = " + std::to_string(t));
      }
    }
  }
  return traj;
}

TrajectoryS solve_ode(const SutherlandCouplings& couplings, const PhasePointS& pt0, std::span<const double> times,
                      const OdeOptions& options) {
  model::require_chamber(pt0.q);
  const int n = pt0.n();
  if (pt0.p.size() != n) throw Error(ErrorCode::InvalidParams, "q and p sizes differ");

  auto field = [&couplings, n](const std::vector<double>& x, std::vector<double>& dx) {
    PhasePointS pt{Eigen::Map<const RVector>(x.data(), n), Eigen::Map<const RVector>(x.data() + n, n)};
    const auto [dh_dq, dh_dp] = hamiltonian_s_gradient(couplings, pt);
    dx.resize(2 * n);
    for (int c = 0; c < n; ++c) {
      dx[c] = 0.5 * dh_dp(c);
      dx[n + c] = -0.5 * dh_dq(c);
    }
  };

  std::vector<double> x0(2 * n);
  for (int c = 0; c < n; ++c) {
    x0[c] = pt0.q(c);
    x0[n + c] = pt0.p(c);
  }
  const auto samples = detail::integrate_at(field, x0, times, options.tolerance);

  TrajectoryS traj;
  traj.times.assign(times.begin(), times.end());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    PhasePointS pt{Eigen::Map<const RVector>(samples[k].data(), n),
                   Eigen::Map<const RVector>(samples[k].data() + n, n)};
    if (!model::chamber_check(std::span<const double>(pt.q.data(), n))) {
      throw Error(ErrorCode::StepFailure, "trajectory left the chamber at t = " + std::to_string(times[k]));
    }
    traj.states.push_back(std::move(pt));
  }
  return traj;
}

TrajectoryS solve_ode(const ModelParams& params, const PhasePointS& pt0, std::span<const double> times,
                      const OdeOptions& options) {
  model::require_point(params, pt0);
  return solve_ode(model::couplings_from_params(params), pt0, times, options);
}

}  // namespace bcdual::sutherland
