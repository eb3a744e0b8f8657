#include "bcdual/rsvd.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bcdual/errors.hpp"
#include "hamiltonian_ode.hpp"
#include "orbit_quad.hpp"
#include "rsvd_entries.hpp"

namespace bcdual::rsvd {

namespace {

const Complex kI(0.0, 1.0);

void require(const ModelParams& params, const PhasePointR& pt) {
  model::validate(params);
  model::require_point(params, pt);
}

}  // namespace

namespace {

std::vector<double> to_std(const RVector& x) { return std::vector<double>(x.data(), x.data() + x.size()); }

}  // namespace

CVector z_values(const ModelParams& params, const RVector& lambda) {
  model::require_chamber(lambda);
  const auto z = detail::z_product<double, Complex>(params.mu, params.nu, to_std(lambda));
  return Eigen::Map<const CVector>(z.data(), static_cast<Eigen::Index>(z.size()));
}

namespace {

CMatrix assemble(const ModelParams& params, const PhasePointR& pt, const CVector& z) {
  CMatrix a(2 * params.n, 2 * params.n);
  const std::vector<Complex> zs(z.data(), z.data() + z.size());
  detail::assemble_entries<double, Complex>(params.mu, params.nu, to_std(pt.lambda), to_std(pt.theta), zs,
                                            [&a](std::size_t r, std::size_t c, Complex v) {
                                              a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
                                            });
  return a;
}

}  // namespace

CMatrix lax_matrix(const ModelParams& params, const PhasePointR& pt) {
  require(params, pt);
  return assemble(params, pt, z_values(params, pt.lambda));
}

RsvdLax lax_A(const ModelParams& params, const PhasePointR& pt) {
  require(params, pt);
  const int n = params.n;
  RsvdLax out;
  out.z = z_values(params, pt.lambda);
  out.A.emplace(assemble(params, pt, out.z), matkit::Tag::hermitian | matkit::Tag::positive_definite);

  const std::vector<Complex> zs(out.z.data(), out.z.data() + n);
  const auto f = detail::f_vector<double, Complex>(to_std(pt.theta), zs);
  out.F = Eigen::Map<const CVector>(f.data(), 2 * n);
  out.V = detail::orbit_vector_quad(params, pt);
  return out;
}

double alpha(double x, double kappa) {
  return std::sqrt(x + std::hypot(x, kappa)) / std::sqrt(2.0 * x);
}

double beta_imag(double x, double kappa) {
  return kappa / (std::sqrt(2.0 * x) * std::sqrt(x + std::hypot(x, kappa)));
}

namespace {

CMatrix h_blocks(const ModelParams& params, const RVector& lambda, double beta_sign) {
  model::require_chamber(lambda);
  const auto n = lambda.size();
  CMatrix h = CMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const double al = alpha(lambda(c), params.kappa);
    const Complex be = beta_sign * kI * beta_imag(lambda(c), params.kappa);
    h(c, c) = al;
    h(n + c, n + c) = al;
    h(c, n + c) = be;
    h(n + c, c) = -be;
  }
  return h;
}

}  // namespace

CMatrix h_matrix(const ModelParams& params, const RVector& lambda) { return h_blocks(params, lambda, 1.0); }

CMatrix h_inverse(const ModelParams& params, const RVector& lambda) { return h_blocks(params, lambda, -1.0); }

CMatrix lax_bc_matrix(const ModelParams& params, const PhasePointR& pt) {
  const CMatrix a = lax_matrix(params, pt);
  const CMatrix h_inv = h_inverse(params, pt.lambda);
  const CMatrix abc = h_inv * a * h_inv;
  return 0.5 * (abc + abc.adjoint());
}

RsvdLax lax_bc(const ModelParams& params, const PhasePointR& pt) {
  RsvdLax out = lax_A(params, pt);
  out.h = h_matrix(params, pt.lambda);
  const CMatrix h_inv = h_inverse(params, pt.lambda);
  CMatrix abc = h_inv * out.A->entries() * h_inv;
  abc = 0.5 * (abc + abc.adjoint());
  out.Abc.emplace(std::move(abc), matkit::Tag::hermitian | matkit::Tag::positive_definite |
                                      matkit::Tag::c_paired_inverse);
  return out;
}

namespace {

// H^R without validation. The formula depends on lambda only through squares
// of lambda_c and lambda_c +- lambda_d, so trial stages of the integrator that
// step slightly outside the chamber still evaluate to finite values.
double hamiltonian_r_raw(const ModelParams& params, const PhasePointR& pt) {
  const auto n = pt.lambda.size();
  const auto& lam = pt.lambda;
  const double mu_sq = params.mu * params.mu;
  double h = 0.0;
  double prod_all = 1.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    const double l2 = lam(c) * lam(c);
    double term = std::cosh(2.0 * pt.theta(c)) * std::sqrt(1.0 + params.nu * params.nu / l2) *
                  std::sqrt(1.0 + params.kappa * params.kappa / l2);
    for (Eigen::Index d = 0; d < n; ++d) {
      if (d == c) continue;
      const double diff = lam(c) - lam(d);
      const double sum = lam(c) + lam(d);
      term *= std::sqrt(1.0 + 4.0 * mu_sq / (diff * diff)) * std::sqrt(1.0 + 4.0 * mu_sq / (sum * sum));
    }
    h += term;
    prod_all *= 1.0 + 4.0 * mu_sq / l2;
  }
  const double coef = params.nu * params.kappa / (4.0 * mu_sq);
  return h + coef * prod_all - coef;
}

}  // namespace

double hamiltonian_r(const ModelParams& params, const PhasePointR& pt) {
  require(params, pt);
  return hamiltonian_r_raw(params, pt);
}

RVector rapidities_from_diagonal(const CMatrix& m, const CVector& z) {
  const auto n = z.size();
  RVector theta(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const double absz = std::abs(z(a));
    const double upper = m(a, a).real();
    const double lower = m(n + a, n + a).real();
    if (!(upper > 0.0) && !(lower > 0.0)) {
      throw Error(ErrorCode::GaugeFailure, "non-positive diagonal in rapidity extraction", static_cast<int>(a));
    }
    theta(a) = upper >= lower ? 0.5 * std::log(upper / absz) : -0.5 * std::log(lower / absz);
  }
  return theta;
}

double magnitude_mismatch(const CMatrix& m, const CMatrix& a) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (m.cwiseAbs() - a.cwiseAbs()).cwiseAbs().maxCoeff() / scale;
}

TrajectoryR solve_algebraic(const ModelParams& params, const PhasePointR& pt0, std::span<const double> times,
                            const AlgebraicOptions& options) {
  require(params, pt0);
  const int n = params.n;
  const CMatrix c_swap = matkit::swap_matrix(n);
  const CMatrix abc0 = lax_bc_matrix(params, pt0);
  // Abc0 lies in U(n, n), so its inverse is C Abc0 C.
  const CMatrix gradient = 0.5 * (abc0 - c_swap * abc0 * c_swap);
  const CMatrix h0 = h_matrix(params, pt0.lambda);
  const CMatrix y0 = h0 * model::doubled(pt0.lambda).cast<Complex>().asDiagonal() * h_inverse(params, pt0.lambda);
  const CMatrix shift = Complex(0.0, params.kappa) * c_swap;

  const auto log_half = [](const CMatrix& m) {
    return RVector(0.5 * matkit::paired_eig(matkit::StructuredMatrix(m, matkit::Tag::hermitian |
                                                                           matkit::Tag::c_paired_inverse))
                             .half_spectrum.array()
                             .log());
  };
  const RVector invariants0 = log_half(abc0);

  TrajectoryR traj;
  traj.times.assign(times.begin(), times.end());
  for (const double t : times) {
    if (!std::isfinite(t)) throw Error(ErrorCode::DomainError, "non-finite time");
    try {
      CMatrix d = y0 - t * gradient + shift;
      d = 0.5 * (d + d.adjoint());
      const matkit::PairedEigen eig =
          matkit::paired_eig(matkit::StructuredMatrix(d, matkit::Tag::hermitian | matkit::Tag::c_paired_anti));

      PhasePointR state;
      state.lambda.resize(n);
      for (int c = 0; c < n; ++c) {
        const double dc = eig.half_spectrum(c);
        const double gap = (dc - params.kappa) * (dc + params.kappa);
        if (!(gap > 0.0)) {
          throw Error(ErrorCode::DomainError, "d_c^2 <= kappa^2", c);
        }
        state.lambda(c) = std::sqrt(gap);
      }
      const CMatrix h_t = h_matrix(params, state.lambda);
      const CMatrix m = h_t * eig.frame.adjoint() * abc0 * eig.frame * h_t;
      const CVector z = z_values(params, state.lambda);
      state.theta = rapidities_from_diagonal(m, z);

      FlowDiagnostics diag;
      const CMatrix abc_t = lax_bc_matrix(params, state);
      diag.spectral_drift = (log_half(abc_t) - invariants0).cwiseAbs().maxCoeff();
      diag.gauge_residual = magnitude_mismatch(m, lax_matrix(params, state));
      diag.frame_residual = matkit::unitarity_residual(eig.frame);
      for (int c = 0; c < 2 * n; ++c) diag.imag_residual = std::max(diag.imag_residual, std::abs(m(c, c).imag()));
      diag.flagged = diag.spectral_drift > options.diagnostic_tol || diag.gauge_residual > options.diagnostic_tol ||
                     diag.frame_residual > options.diagnostic_tol;

      traj.states.push_back(std::move(state));
      traj.diagnostics.push_back(diag);
    } catch (const Error& e) {
      throw e.with_context("at t = " + std::to_string(t));
    }
  }
  return traj;
}

TrajectoryR solve_ode(const ModelParams& params, const PhasePointR& pt0, std::span<const double> times,
                      const OdeOptions& options) {
  require(params, pt0);
  const int n = params.n;

  auto energy = [&params, n](const std::vector<double>& x) {
    PhasePointR pt{Eigen::Map<const RVector>(x.data(), n), Eigen::Map<const RVector>(x.data() + n, n)};
    return hamiltonian_r_raw(params, pt);
  };
  const double rel = options.fd_relative_step;
  auto field = [&energy, n, rel](const std::vector<double>& x, std::vector<double>& dx) {
    std::vector<double> probe = x;
    std::vector<double> grad(2 * n);
    for (int i = 0; i < 2 * n; ++i) {
      const double step = rel * std::max(1.0, std::abs(x[i]));
      auto at = [&](double offset) {
        probe[i] = x[i] + offset;
        return energy(probe);
      };
      grad[i] = (at(-2.0 * step) - 8.0 * at(-step) + 8.0 * at(step) - at(2.0 * step)) / (12.0 * step);
      probe[i] = x[i];
    }
    dx.resize(2 * n);
    for (int c = 0; c < n; ++c) {
      dx[c] = -0.5 * grad[n + c];  // lambda' = -dH/dtheta / 2
      dx[n + c] = 0.5 * grad[c];   // theta' = dH/dlambda / 2
    }
  };

  std::vector<double> x0(2 * n);
  for (int c = 0; c < n; ++c) {
    x0[c] = pt0.lambda(c);
    x0[n + c] = pt0.theta(c);
  }
  const auto samples = detail::integrate_at(field, x0, times, options.tolerance);

  TrajectoryR traj;
  traj.times.assign(times.begin(), times.end());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    PhasePointR pt{Eigen::Map<const RVector>(samples[k].data(), n),
                   Eigen::Map<const RVector>(samples[k].data() + n, n)};
    if (!model::chamber_check(std::span<const double>(pt.lambda.data(), n))) {
      throw Error(ErrorCode::StepFailure, "trajectory left the chamber at t = " + std::to_string(times[k]));
    }
    traj.states.push_back(std::move(pt));
  }
  return traj;
}

}  // namespace bcdual::rsvd
