#include "verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "bcdual/duality.hpp"
#include "bcdual/errors.hpp"
#include "bcdual/rsvd.hpp"
#include "bcdual/sutherland.hpp"
#include "config.hpp"
#include "sampling.hpp"

namespace bcdual::cli {

namespace {

using SampleFn = std::function<double(std::mt19937_64& rng, int index, int n_max)>;

struct Check {
  CheckInfo info;
  SampleFn sample;
};

int cycle_n(int index, int n_max) { return 1 + index % n_max; }

double rel_gap(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

CMatrix lax_square(const CMatrix& l) { return l * l; }

std::vector<double> grid(double end, int steps) { return uniform_grid(0.0, end, steps); }

double max_abs(const RVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Sorted descending eigenvalues of Abc computed by the plain Hermitian solver.
RVector abc_spectrum(const ModelParams& params, const PhasePointR& pt) {
  return matkit::hermitian_eig_desc(rsvd::lax_bc_matrix(params, pt)).values;
}

RVector exp_pm_2q(const RVector& q) {
  const int n = static_cast<int>(q.size());
  RVector out(2 * n);
  for (int c = 0; c < n; ++c) {
    out(c) = std::exp(2.0 * q(c));
    out(2 * n - 1 - c) = std::exp(-2.0 * q(c));
  }
  return out;
}

RVector pm_sorted(const RVector& x) {
  const int n = static_cast<int>(x.size());
  RVector out(2 * n);
  for (int c = 0; c < n; ++c) {
    out(c) = x(c);
    out(2 * n - 1 - c) = -x(c);
  }
  return out;
}

// 1/2-normalized Poisson bracket of two functions of (q, p) by central differences.
double bracket(const std::function<double(const PhasePointS&)>& f, const std::function<double(const PhasePointS&)>& g,
               const PhasePointS& pt, double step) {
  const int n = pt.n();
  auto partial = [&](const std::function<double(const PhasePointS&)>& fn, int c, bool momentum) {
    PhasePointS plus = pt, minus = pt;
    (momentum ? plus.p : plus.q)(c) += step;
    (momentum ? minus.p : minus.q)(c) -= step;
    return (fn(plus) - fn(minus)) / (2.0 * step);
  };
  double sum = 0.0;
  for (int c = 0; c < n; ++c) {
    sum += partial(f, c, false) * partial(g, c, true) - partial(f, c, true) * partial(g, c, false);
  }
  return 0.5 * sum;
}

std::vector<Check> registry() {
  std::vector<Check> checks;
  auto add = [&checks](std::string name, std::string description, int samples, double bound, Comparison cmp,
                       SampleFn fn) {
    checks.push_back({{std::move(name), std::move(description), samples, bound, cmp}, std::move(fn)});
  };

  add("trace_identity_sutherland", "|tr(L^2)/4 - H^S| / (1 + |H^S|)", 500, 1e-10, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const PhasePointS pt = sample_point_s(rng, n);
        const Complex tr = lax_square(sutherland::lax(params, pt).L).trace() / 4.0;
        const double h = sutherland::hamiltonian_s(params, pt);
        return std::max(rel_gap(tr.real(), h), std::abs(tr.imag()) / (1.0 + std::abs(h)));
      });

  add("trace_identity_rsvd", "|tr(A h^-2)/2 - H^R| / (1 + |H^R|)", 500, 1e-9, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const PhasePointR pt = sample_point_r(rng, n);
        const CMatrix h_inv = rsvd::h_inverse(params, pt.lambda);
        const CMatrix a = rsvd::lax_matrix(params, pt);
        const Complex tr = (a * h_inv * h_inv).trace() / 2.0;
        const double h = rsvd::hamiltonian_r(params, pt);
        return std::max(rel_gap(tr.real(), h), std::abs(tr.imag()) / (1.0 + std::abs(h)));
      });

  add("hamiltonian_r_lower_bound", "min H^R - n", 500, 0.0, Comparison::greater_than,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const PhasePointR pt = sample_point_r(rng, n);
        return rsvd::hamiltonian_r(params, pt) - n;
      });

  add("lax_square_positivity", "min eigenvalue of L^2 (kappa = 0 and nu = kappa included)", 500, 0.0,
      Comparison::greater_than, [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        ModelParams params = sample_params(rng, n);
        if (i % 3 == 1) params.kappa = 0.0;
        if (i % 3 == 2) params.kappa = params.nu;
        const PhasePointS pt = sample_point_s(rng, n);
        const CMatrix l2 = lax_square(sutherland::lax(params, pt).L);
        return matkit::hermitian_eig_desc(l2).values.minCoeff();
      });

  add("spectrum_sutherland", "max |eig(L) - (+-lambda_hat)|", 200, 1e-10, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const PhasePointS pt = sample_point_s(rng, n);
        const RVector direct = sutherland::lax_spectrum_direct(params, pt);
        const RVector dual = pm_sorted(duality::s_to_r(params, pt).lambda);
        return max_abs(direct - dual);
      });

  add("spectrum_rsvd_bc", "max |eig(Abc(S(q,p))) - e^{+-2q}| / |Abc|", 200, 1e-9, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const PhasePointS pt = sample_point_s(rng, n);
        const RVector eig = abc_spectrum(params, duality::s_to_r(params, pt));
        const RVector expected = exp_pm_2q(pt.q);
        return max_abs(eig - expected) / expected(0);
      });

  add("round_trip_s_r", "|S^-1(S(q,p)) - (q,p)|_inf", 100, 1e-7, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        return duality::round_trip(params, sample_point_s(rng, n)).residuals.round_trip;
      });

  add("round_trip_r_s", "|S(S^-1(lambda,theta)) - (lambda,theta)|_inf", 100, 1e-7, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        return duality::reverse_round_trip(params, sample_point_r(rng, n)).residuals.round_trip;
      });

  add("cross_hamiltonian_r", "|H^R(S(q,p)) - sum cosh(2q)| relative", 200, 1e-8, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const PhasePointS pt = sample_point_s(rng, n);
        const double expected = (2.0 * pt.q).array().cosh().sum();
        return std::abs(rsvd::hamiltonian_r(params, duality::s_to_r(params, pt)) - expected) / expected;
      });

  add("cross_hamiltonian_s", "|H^S(S^-1(lambda,theta)) - sum lambda^2 / 2| relative", 200, 1e-8,
      Comparison::at_most, [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const PhasePointR pt = sample_point_r(rng, n);
        const double expected = 0.5 * pt.lambda.squaredNorm();
        return std::abs(sutherland::hamiltonian_s(params, duality::r_to_s(params, pt)) - expected) / expected;
      });

  add("solver_agreement_s", "sup_t |algebraic - ODE| on [0, 1], Sutherland", 20, 1e-6, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, std::min(n_max, 3));
        const ModelParams params = sample_params(rng, n);
        const PhasePointS pt = sample_point_s(rng, n);
        const auto ts = grid(1.0, 20);
        const auto alg = sutherland::solve_algebraic(params, pt, ts);
        const auto ode = sutherland::solve_ode(params, pt, ts);
        double worst = 0.0;
        for (std::size_t k = 0; k < ts.size(); ++k) {
          worst = std::max(worst, duality::sup_distance(alg.states[k], ode.states[k]));
        }
        return worst;
      });

  add("solver_agreement_r", "sup_t |algebraic - ODE| on [0, 1], RSvD", 20, 1e-5, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, std::min(n_max, 3));
        const ModelParams params = sample_params(rng, n);
        const PhasePointR pt = sample_point_r(rng, n);
        const auto ts = grid(1.0, 20);
        const auto alg = rsvd::solve_algebraic(params, pt, ts);
        const auto ode = rsvd::solve_ode(params, pt, ts);
        double worst = 0.0;
        for (std::size_t k = 0; k < ts.size(); ++k) {
          worst = std::max(worst, duality::sup_distance(alg.states[k], ode.states[k]));
        }
        return worst;
      });

  add("isospectral_s", "sup_t |eig L(t) - eig L(0)| on [0, 2]", 20, 1e-8, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const PhasePointS pt = sample_point_s(rng, n);
        const auto traj = sutherland::solve_algebraic(params, pt, grid(2.0, 20));
        const RVector spec0 = sutherland::lax_spectrum_direct(params, pt);
        double worst = 0.0;
        for (const auto& s : traj.states) {
          worst = std::max(worst, max_abs(sutherland::lax_spectrum_direct(params, s) - spec0));
        }
        return worst;
      });

  add("isospectral_r", "sup_t |eig Abc(t) - eig Abc(0)| on [0, 2]", 20, 1e-7, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const PhasePointR pt = sample_point_r(rng, n);
        const auto traj = rsvd::solve_algebraic(params, pt, grid(2.0, 20));
        const RVector spec0 = abc_spectrum(params, pt);
        double worst = 0.0;
        for (const auto& s : traj.states) worst = std::max(worst, max_abs(abc_spectrum(params, s) - spec0));
        return worst;
      });

  add("action_angle_s_actions", "sup_t |lambda_hat(t) - lambda_hat(0)| along Sutherland flows", 20, 1e-7,
      Comparison::at_most, [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, std::min(n_max, 3));
        const ModelParams params = sample_params(rng, n);
        const PhasePointS pt = sample_point_s(rng, n);
        const auto ts = grid(1.0, 20);
        const auto traj = sutherland::solve_algebraic(params, pt, ts);
        const RVector l0 = duality::s_to_r(params, pt).lambda;
        double worst = 0.0;
        for (const auto& s : traj.states) worst = std::max(worst, max_abs(duality::s_to_r(params, s).lambda - l0));
        return worst;
      });

  add("action_angle_s_angles", "sup_t |theta_hat(t) - theta_hat(0) - t lambda_hat / 2|", 20, 1e-5,
      Comparison::at_most, [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, std::min(n_max, 3));
        const ModelParams params = sample_params(rng, n);
        const PhasePointS pt = sample_point_s(rng, n);
        const auto ts = grid(1.0, 20);
        const auto traj = sutherland::solve_algebraic(params, pt, ts);
        const PhasePointR r0 = duality::s_to_r(params, pt);
        double worst = 0.0;
        for (std::size_t k = 0; k < ts.size(); ++k) {
          const RVector expected = r0.theta + 0.5 * ts[k] * r0.lambda;
          worst = std::max(worst, max_abs(duality::s_to_r(params, traj.states[k]).theta - expected));
        }
        return worst;
      });

  add("action_angle_r_actions", "sup_t |q_check(t) - q_check(0)| along RSvD flows", 20, 1e-7, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, std::min(n_max, 3));
        const ModelParams params = sample_params(rng, n);
        const PhasePointR pt = sample_point_r(rng, n);
        const auto traj = rsvd::solve_algebraic(params, pt, grid(1.0, 20));
        const RVector q0 = duality::r_to_s(params, pt).q;
        double worst = 0.0;
        for (const auto& s : traj.states) worst = std::max(worst, max_abs(duality::r_to_s(params, s).q - q0));
        return worst;
      });

  add("action_angle_r_momenta", "sup_t |p_check(t) - p_check(0) + t sinh(2 q_check)|", 20, 1e-5,
      Comparison::at_most, [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, std::min(n_max, 3));
        const ModelParams params = sample_params(rng, n);
        const PhasePointR pt = sample_point_r(rng, n);
        const auto ts = grid(1.0, 20);
        const auto traj = rsvd::solve_algebraic(params, pt, ts);
        const PhasePointS s0 = duality::r_to_s(params, pt);
        const RVector slope = -(2.0 * s0.q).array().sinh().matrix();
        double worst = 0.0;
        for (std::size_t k = 0; k < ts.size(); ++k) {
          const RVector expected = s0.p + ts[k] * slope;
          worst = std::max(worst, max_abs(duality::r_to_s(params, traj.states[k]).p - expected));
        }
        return worst;
      });

  add("golden_pair", "S((1),(0)) vs (1/sinh 2, 0) and H^R vs cosh 2 at (-1, 1, 0)", 1, 1e-6, Comparison::at_most,
      [](std::mt19937_64&, int, int) {
        const ModelParams params{-1.0, 1.0, 0.0, 1};
        PhasePointS pt;
        pt.q = RVector::Constant(1, 1.0);
        pt.p = RVector::Zero(1);
        const PhasePointR r = duality::s_to_r(params, pt);
        return std::max({std::abs(r.lambda(0) - 1.0 / std::sinh(2.0)), std::abs(r.theta(0)),
                         std::abs(rsvd::hamiltonian_r(params, r) - std::cosh(2.0))});
      });

  add("coupling_round_trip", "|c(p(g)) - g|_inf over coupling triples", 20, 1e-12, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int) {
        std::uniform_real_distribution<double> g(0.1, 4.0), g12(0.0, 2.0);
        SutherlandCouplings c{g(rng), g12(rng), g12(rng)};
        if (i % 4 == 1) c.g1_sq = 0.0;
        if (i % 4 == 2) c.g2_sq = 0.0;
        const SutherlandCouplings back = model::couplings_from_params(model::params_from_couplings(c, 1));
        return std::max({std::abs(back.g_sq - c.g_sq), std::abs(back.g1_sq - c.g1_sq),
                         std::abs(back.g2_sq - c.g2_sq)});
      });

  // Structural invariants beyond the headline properties.

  add("paired_eig_structure", "paired frame: |kC - Ck|, reconstruction, both pairings, relative", 200, 1e-10,
      Comparison::at_most, [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const CMatrix c_swap = matkit::swap_matrix(n);
        CMatrix m;
        if (i % 2 == 0) {
          m = sutherland::lax(params, sample_point_s(rng, n)).Lp.entries();
        } else {
          m = rsvd::lax_bc_matrix(params, sample_point_r(rng, n));
        }
        const auto tags = i % 2 == 0 ? matkit::Tag::hermitian | matkit::Tag::c_paired_anti
                                     : matkit::Tag::hermitian | matkit::Tag::c_paired_inverse;
        const matkit::PairedEigen eig = matkit::paired_eig(matkit::StructuredMatrix(m, tags));
        const double scale = m.norm();
        return std::max((eig.frame * c_swap - c_swap * eig.frame).norm(), (eig.reconstruct() - m).norm() / scale);
      });

  add("expm_inverse", "|expm(A) expm(-A) - 1| for |A| <= 5", 100, 1e-10, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int) {
        const int dim = 2 + 2 * (i % 4);
        std::normal_distribution<double> g;
        CMatrix a(dim, dim);
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
          for (Eigen::Index c = 0; c < a.cols(); ++c) a(r, c) = Complex(g(rng), g(rng));
        }
        std::uniform_real_distribution<double> norm(0.0, 5.0);
        a *= norm(rng) / a.norm();
        return (matkit::expm(a) * matkit::expm(-a) - CMatrix::Identity(dim, dim)).norm();
      });

  add("sqrt_pd_square", "|R R - P| / |P| for random positive definite P", 100, 1e-11, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int) {
        const int dim = 2 + 2 * (i % 4);
        std::normal_distribution<double> g;
        CMatrix x(dim, dim);
        for (Eigen::Index r = 0; r < x.rows(); ++r) {
          for (Eigen::Index c = 0; c < x.cols(); ++c) x(r, c) = Complex(g(rng), g(rng));
        }
        const CMatrix p = x * x.adjoint() + 0.1 * CMatrix::Identity(dim, dim);
        const auto tags = matkit::Tag::hermitian | matkit::Tag::positive_definite;
        const CMatrix r = matkit::sqrt_pd(matkit::StructuredMatrix(p, tags)).entries();
        return std::max((r * r - p).norm(), (r * p - p * r).norm()) / p.norm();
      });

  add("rsvd_lax_positivity", "min eigenvalue of A(lambda, theta) / max eigenvalue", 500, 0.0,
      Comparison::greater_than, [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const RVector ev = matkit::hermitian_eig_desc(rsvd::lax_matrix(params, sample_point_r(rng, n))).values;
        return ev(ev.size() - 1) / ev(0);
      });

  add("orbit_vector", "|V*V - N| and |CV + V| for V = A^-1/2 F", 200, 1e-9, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const rsvd::RsvdLax lax = rsvd::lax_A(params, sample_point_r(rng, n));
        const CVector& v = lax.V;
        return std::max(std::abs(v.squaredNorm() - 2.0 * n), (v.head(n) + v.tail(n)).norm());
      });

  add("xi_rank_one", "second singular value of xi(V) + i mu 1 - i (mu - nu) C, relative", 100, 1e-10,
      Comparison::at_most, [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        std::normal_distribution<double> g;
        CVector w(n);
        for (int c = 0; c < n; ++c) w(c) = Complex(g(rng), g(rng));
        w *= std::sqrt(static_cast<double>(n)) / w.norm();
        CVector v(2 * n);
        v << w, -w;
        const Complex im(0.0, 1.0);
        const CMatrix m = model::xi_of(params, v).entries() + im * params.mu * CMatrix::Identity(2 * n, 2 * n) -
                          im * (params.mu - params.nu) * matkit::swap_matrix(n);
        const RVector s = matkit::svd_square(m).s;
        return s.size() > 1 ? s(1) / s(0) : 0.0;
      });

  add("rsvd_gauge_residual", "off-diagonal magnitude mismatch along RSvD flows", 20, 1e-7, Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const auto traj = rsvd::solve_algebraic(params, sample_point_r(rng, n), grid(1.0, 10));
        double worst = 0.0;
        for (const auto& d : traj.diagnostics) worst = std::max(worst, d.gauge_residual);
        return worst;
      });

  add("energy_conservation_s", "sup_t |H^S(t) - H^S(0)| / (1 + |H^S(0)|) for the ODE on [0, 2]", 20, 1e-8,
      Comparison::at_most,
      [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const PhasePointS pt = sample_point_s(rng, n);
        const double h0 = sutherland::hamiltonian_s(params, pt);
        double worst = 0.0;
        for (const auto& s : sutherland::solve_ode(params, pt, grid(2.0, 20)).states) {
          worst = std::max(worst, std::abs(sutherland::hamiltonian_s(params, s) - h0));
        }
        // The local tolerance is relative, so drift grows with the energy.
        return worst / (1.0 + std::abs(h0));
      });

  add("energy_conservation_r", "sup_t |H^R(t) - H^R(0)| / H^R(0) for the ODE on [0, 1]", 20, 1e-7,
      Comparison::at_most, [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, std::min(n_max, 3));
        const ModelParams params = sample_params(rng, n);
        const PhasePointR pt = sample_point_r(rng, n);
        const double h0 = rsvd::hamiltonian_r(params, pt);
        double worst = 0.0;
        for (const auto& s : rsvd::solve_ode(params, pt, grid(1.0, 20)).states) {
          worst = std::max(worst, std::abs(rsvd::hamiltonian_r(params, s) - h0) / h0);
        }
        return worst;
      });

  add("action_involution", "max |{lambda_hat_i, lambda_hat_j}| by central differences", 20, 1e-5,
      Comparison::at_most, [](std::mt19937_64& rng, int i, int n_max) {
        if (n_max < 2) return 0.0;
        const int n = 2 + i % (n_max - 1);
        const ModelParams params = sample_params(rng, n);
        const PhasePointS pt = sample_point_s(rng, n);
        double worst = 0.0;
        for (int a = 0; a < n; ++a) {
          for (int b = a + 1; b < n; ++b) {
            auto la = [&](const PhasePointS& x) { return duality::s_to_r(params, x).lambda(a); };
            auto lb = [&](const PhasePointS& x) { return duality::s_to_r(params, x).lambda(b); };
            worst = std::max(worst, std::abs(bracket(la, lb, pt, 1e-5)));
          }
        }
        return worst;
      });

  add("duality_local_lipschitz", "|S(x + 1e-8 e) - S(x)|_inf / (1 + max lambda_hat), random unit direction e", 50,
      1e-6,
      Comparison::at_most, [](std::mt19937_64& rng, int i, int n_max) {
        const int n = cycle_n(i, n_max);
        const ModelParams params = sample_params(rng, n);
        const PhasePointS pt = sample_point_s(rng, n);
        std::normal_distribution<double> g;
        RVector dir(2 * n);
        for (int c = 0; c < 2 * n; ++c) dir(c) = g(rng);
        dir /= max_abs(dir);
        PhasePointS moved = pt;
        moved.q += 1e-8 * dir.head(n);
        moved.p += 1e-8 * dir.tail(n);
        // Near a collision the map genuinely stretches by the size of the
        // actions (lambda_hat ~ momentum scale), so that scale is divided out.
        const PhasePointR image = duality::s_to_r(params, pt);
        return duality::sup_distance(duality::s_to_r(params, moved), image) / (1.0 + max_abs(image.lambda));
      });

  return checks;
}

CheckResult run_check(const Check& check, std::size_t stream, const VerifyOptions& options) {
  CheckResult out;
  out.name = check.info.name;
  out.description = check.info.description;
  out.comparison = check.info.comparison;
  out.bound = check.info.bound;
  if (auto it = options.bound_overrides.find(out.name); it != options.bound_overrides.end()) out.bound = it->second;
  out.samples = options.samples ? std::max(1, *options.samples) : check.info.default_samples;
  if (check.info.default_samples == 1) out.samples = 1;

  std::vector<double> values(out.samples, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> errors(out.samples);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < out.samples; i = next++) {
      std::mt19937_64 rng = derived_rng(options.seed, stream, static_cast<std::uint64_t>(i));
      try {
        values[i] = check.sample(rng, i, options.n_max);
      } catch (const std::exception& e) {
        errors[i] = "sample " + std::to_string(i) + ": " + e.what();
      }
    }
  };
  const int threads = std::clamp(options.threads, 1, out.samples);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // Reduce in sample order so the report does not depend on scheduling.
  const bool upper = out.comparison == Comparison::at_most;
  out.worst = upper ? 0.0 : std::numeric_limits<double>::infinity();
  bool all_finite = true;
  for (int i = 0; i < out.samples; ++i) {
    if (!errors[i].empty()) {
      if (out.failure.empty()) out.failure = errors[i];
      continue;
    }
    if (!std::isfinite(values[i])) {
      all_finite = false;
      if (out.failure.empty()) out.failure = "sample " + std::to_string(i) + ": non-finite residual";
      continue;
    }
    out.worst = upper ? std::max(out.worst, values[i]) : std::min(out.worst, values[i]);
  }
  const bool within = upper ? out.worst <= out.bound : out.worst > out.bound;
  out.pass = out.failure.empty() && all_finite && within;
  return out;
}

}  // namespace

const CheckResult* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<CheckInfo> list_checks() {
  std::vector<CheckInfo> out;
  for (const auto& c : registry()) out.push_back(c.info);
  return out;
}

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.n_max < 1) throw ConfigError("n must be at least 1");
  const std::vector<Check> checks = registry();
  for (const auto& [name, bound] : options.bound_overrides) {
    const bool known = std::any_of(checks.begin(), checks.end(), [&](const Check& c) { return c.info.name == name; });
    if (!known) throw ConfigError("unknown check '" + name + "'");
  }
  for (const auto& name : options.only) {
    const bool known = std::any_of(checks.begin(), checks.end(), [&](const Check& c) { return c.info.name == name; });
    if (!known) throw ConfigError("unknown check '" + name + "'");
  }

  VerifyReport report;
  report.seed = options.seed;
  report.n_max = options.n_max;
  report.pass = true;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const auto& name = checks[k].info.name;
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), name) == options.only.end()) {
      continue;
    }
    // The stream id is the registry position, so filtering does not change any sample.
    report.checks.push_back(run_check(checks[k], k, options));
    report.pass = report.pass && report.checks.back().pass;
  }
  return report;
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json j = {{"name", c.name},
                        {"description", c.description},
                        {"samples", c.samples},
                        {"comparison", c.comparison == Comparison::at_most ? "<=" : ">"},
                        {"bound", c.bound},
                        {"pass", c.pass}};
    j["worst"] = std::isfinite(c.worst) ? nlohmann::json(c.worst) : nlohmann::json(nullptr);
    if (!c.failure.empty()) j["failure"] = c.failure;
    checks.push_back(std::move(j));
  }
  return {{"seed", report.seed}, {"n_max", report.n_max}, {"pass", report.pass}, {"checks", std::move(checks)}};
}

}  // namespace bcdual::cli
