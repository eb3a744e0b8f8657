#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bcdual/errors.hpp"
#include "bcdual/sutherland.hpp"
#include "sampling.hpp"
#include "support.hpp"

using namespace bcdual;
namespace su = bcdual::sutherland;

namespace {

const Complex kI(0.0, 1.0);

double sinh_sq(double x) { return std::sinh(x) * std::sinh(x); }

// Written out for n = 2 without loops.
double hamiltonian_n2(const SutherlandCouplings& g, double q1, double q2, double p1, double p2) {
  return 0.5 * (p1 * p1 + p2 * p2) + g.g_sq / sinh_sq(q1 - q2) + g.g_sq / sinh_sq(q1 + q2) + g.g1_sq / sinh_sq(q1) +
         g.g1_sq / sinh_sq(q2) + g.g2_sq / sinh_sq(2 * q1) + g.g2_sq / sinh_sq(2 * q2);
}

RVector sorted_real_spectrum(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  return test::sorted_desc(es.eigenvalues().real());
}

double state_distance(const PhasePointS& a, const PhasePointS& b) {
  return std::max(test::max_abs(a.q - b.q), test::max_abs(a.p - b.p));
}

}  // namespace

TEST(SutherlandLax, SingleParticleEntries) {
  const PhasePointS pt = test::point_s({1.0}, {0.0});
  su::LaxS l = su::lax(test::params(-1, 1, 0, 1), pt);
  EXPECT_NEAR(std::abs(l.B(0, 0) - kI / std::sinh(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(l.A(0, 0)), 0.0, 1e-15);

  l = su::lax(test::params(-1, 1, 1, 1), pt);
  EXPECT_NEAR(l.B(0, 0).imag(), 1.0 / std::sinh(2.0) + 1.0 / std::tanh(2.0), 1e-15);
  EXPECT_NEAR(l.B(0, 0).imag(), 1.3130353, 1e-7);
  EXPECT_NEAR(std::abs(l.L(0, 1) - (l.B(0, 0) - kI)), 0.0, 1e-15);
}

TEST(SutherlandLax, BlockStructureOnRandomPoints) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 4;
    const ModelParams params = cli::sample_params(rng, n);
    const su::LaxS l = su::lax(params, cli::sample_point_s(rng, n));
    const CMatrix& lp = l.Lp.entries();
    const double scale = 1.0 + lp.norm();
    EXPECT_LE(matkit::hermitian_residual(lp), 1e-13 * scale);
    EXPECT_LE(matkit::anti_pairing_residual(lp), 1e-13 * scale);
    EXPECT_LE((l.A - l.A.adjoint()).norm(), 1e-13 * scale);
    EXPECT_LE((l.B + l.B.adjoint()).norm(), 1e-13 * scale);
    const CMatrix shift = l.L - lp + kI * params.kappa * matkit::swap_matrix(n);
    EXPECT_LE(shift.norm(), 1e-15 * scale);
  }
}

TEST(SutherlandHamiltonian, SingleParticleExamples) {
  const ModelParams params = test::params(-1, 1, 0, 1);
  // g1^2 = 0, g2^2 = 1/2: 0.5 / sinh^2 2 = 0.0380109.
  EXPECT_NEAR(su::hamiltonian_s(params, test::point_s({1.0}, {0.0})), 0.5 / sinh_sq(2.0), 1e-15);
  EXPECT_NEAR(su::hamiltonian_s(params, test::point_s({1.0}, {0.0})), 0.0380109, 1e-7);
  EXPECT_NEAR(su::hamiltonian_s(params, test::point_s({1.0}, {2.0})), 2.0 + 0.5 / sinh_sq(2.0), 1e-15);
}

TEST(SutherlandHamiltonian, MatchesWrittenOutTwoParticleFormula) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const ModelParams params = cli::sample_params(rng, 2);
    const PhasePointS pt = cli::sample_point_s(rng, 2);
    const double expected =
        hamiltonian_n2(model::couplings_from_params(params), pt.q(0), pt.q(1), pt.p(0), pt.p(1));
    EXPECT_LE(test::rel(su::hamiltonian_s(params, pt), expected), 1e-13);
  }
}

TEST(SutherlandHamiltonian, QuarterTraceOfLaxSquare) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const ModelParams params = cli::sample_params(rng, n);
    const PhasePointS pt = cli::sample_point_s(rng, n);
    const CMatrix l = su::lax(params, pt).L;
    const Complex trace = 0.25 * (l * l).trace();
    const double h = su::hamiltonian_s(params, pt);
    EXPECT_LE(std::abs(trace.real() - h), 1e-10 * (1.0 + std::abs(h)));
    EXPECT_LE(std::abs(trace.imag()), 1e-10 * (1.0 + std::abs(h)));
  }
}

TEST(SutherlandHamiltonian, GradientMatchesDifferenceQuotients) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 4;
    const SutherlandCouplings g = model::couplings_from_params(cli::sample_params(rng, n));
    const PhasePointS pt = cli::sample_point_s(rng, n);
    const auto [dq, dp] = su::hamiltonian_s_gradient(g, pt);
    for (int c = 0; c < n; ++c) {
      const double step = 1e-6;
      PhasePointS plus = pt, minus = pt;
      plus.q(c) += step;
      minus.q(c) -= step;
      const double fd = (su::hamiltonian_s(g, plus) - su::hamiltonian_s(g, minus)) / (2 * step);
      EXPECT_LE(std::abs(dq(c) - fd), 1e-6 * (1.0 + std::abs(fd)));
      EXPECT_DOUBLE_EQ(dp(c), pt.p(c));
    }
  }
}

TEST(SutherlandSpectrum, SingleParticleValues) {
  const PhasePointS pt = test::point_s({1.0}, {0.0});
  su::SpectralDataS d = su::spectral_data(test::params(-1, 1, 0, 1), pt);
  EXPECT_NEAR(d.lambda_hat(0), 0.2757206, 1e-7);
  EXPECT_NEAR(d.lambda_hat(0), 1.0 / std::sinh(2.0), 1e-15);

  d = su::spectral_data(test::params(-1, 1, 1, 1), pt);
  EXPECT_NEAR(d.s(0), 1.3130353, 1e-7);
  EXPECT_NEAR(d.lambda_hat(0), 0.8509181, 1e-7);
}

TEST(SutherlandSpectrum, LaxEigenvaluesArePlusMinusLambdaHat) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 4;
    const ModelParams params = cli::sample_params(rng, n);
    const PhasePointS pt = cli::sample_point_s(rng, n);
    const su::SpectralDataS d = su::spectral_data(params, pt);
    const RVector expected = test::sorted_desc(model::doubled(d.lambda_hat));
    const RVector eig = sorted_real_spectrum(su::lax(params, pt).L);
    const double scale = 1.0 + d.lambda_hat(0);
    EXPECT_LE(test::max_abs(eig - expected), 1e-10 * scale) << "trial " << trial;
    EXPECT_LE(test::max_abs(su::lax_spectrum_direct(params, pt) - expected), 1e-10 * scale);
    EXPECT_LE(matkit::unitarity_residual(d.k), 1e-12);
    for (int c = 0; c + 1 < n; ++c) EXPECT_GT(d.lambda_hat(c), d.lambda_hat(c + 1));
  }
}

TEST(SutherlandSpectrum, FrameDiagonalizesHermitianPart) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 4;
    const ModelParams params = cli::sample_params(rng, n);
    const PhasePointS pt = cli::sample_point_s(rng, n);
    const su::SpectralDataS d = su::spectral_data(params, pt);
    const CMatrix lp = su::lax(params, pt).Lp.entries();
    CMatrix diag = CMatrix::Zero(2 * n, 2 * n);
    for (int c = 0; c < n; ++c) {
      diag(c, c) = d.s(c);
      diag(n + c, n + c) = -d.s(c);
    }
    EXPECT_LE((d.k * diag * d.k.adjoint() - lp).norm(), 1e-11 * (1.0 + lp.norm()));
  }
}

TEST(SutherlandSpectrum, LaxSquareIsPositiveDefinite) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 4;
    const ModelParams params = cli::sample_params(rng, n);
    const PhasePointS pt = cli::sample_point_s(rng, n);
    const CMatrix l = su::lax(params, pt).L;
    Eigen::ComplexEigenSolver<CMatrix> es(CMatrix(l * l), false);
    const Eigen::VectorXcd ev = es.eigenvalues();
    double smallest = ev(0).real();
    for (int k = 0; k < ev.size(); ++k) smallest = std::min(smallest, ev(k).real());
    EXPECT_GT(smallest, 0.0) << "trial " << trial;
  }
}

TEST(SutherlandSpectrum, DegenerateInputsAreRejected) {
  // Far from the wall nu / sinh 2q underflows against kappa coth 2q = kappa,
  // so s_1 is not resolvably above |kappa|.
  const ModelParams params = test::params(-1, 1, 1, 1);
  try {
    su::spectral_data(params, test::point_s({20.0}, {0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateSpectrum);
  }
}

TEST(SutherlandSolvers, ZeroTimeReturnsInitialPoint) {
  const ModelParams params = test::params(-1, 1, 0.5, 2);
  const PhasePointS pt = test::point_s({2.0, 0.7}, {0.3, -0.4});
  const std::vector<double> times{0.0};
  const su::TrajectoryS traj = su::solve_algebraic(params, pt, times);
  ASSERT_EQ(traj.states.size(), 1u);
  EXPECT_LE(state_distance(traj.states[0], pt), 1e-12);
  const su::TrajectoryS ode = su::solve_ode(params, pt, times);
  EXPECT_EQ(state_distance(ode.states[0], pt), 0.0);
}

TEST(SutherlandSolvers, SingleParticleMatchesOde) {
  const ModelParams params = test::params(-1, 1, 0, 1);
  const PhasePointS pt = test::point_s({1.0}, {2.0});
  const std::vector<double> times{0.2};
  const auto alg = su::solve_algebraic(params, pt, times);
  const auto ode = su::solve_ode(params, pt, times);
  EXPECT_LE(state_distance(alg.states[0], ode.states[0]), 1e-6);
}

TEST(SutherlandSolvers, AgreeOnRandomData) {
  std::mt19937_64 rng(38);
  std::vector<double> times;
  for (int k = 0; k <= 10; ++k) times.push_back(0.1 * k);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 4;
    const ModelParams params = cli::sample_params(rng, n);
    const PhasePointS pt = cli::sample_point_s(rng, n);
    const auto alg = su::solve_algebraic(params, pt, times);
    const auto ode = su::solve_ode(params, pt, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      EXPECT_LE(state_distance(alg.states[k], ode.states[k]), 1e-6) << "trial " << trial << " t " << times[k];
      EXPECT_FALSE(alg.diagnostics[k].flagged);
      EXPECT_LE(alg.diagnostics[k].frame_residual, 1e-8);
      EXPECT_LE(alg.diagnostics[k].imag_residual, 1e-8);
    }
  }
}

TEST(SutherlandSolvers, FreeLimitSlopeIsHalfMomentum) {
  const ModelParams params = test::params(-1, 1, 0, 2);
  const PhasePointS pt = test::point_s({8.0, 0.5}, {1.0, -1.0});
  const std::vector<double> times{0.01, 0.02};
  const auto alg = su::solve_algebraic(params, pt, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    // The second particle sits near the wall potential, so only the far one is free.
    EXPECT_NEAR(alg.states[k].q(0), 8.0 + times[k] * 0.5, 1e-4);
    EXPECT_NEAR(alg.states[k].q(1), 0.5 - times[k] * 0.5, 1e-4);
  }
}

TEST(SutherlandSolvers, IsospectralAtHighEnergy) {
  // Fast particles spread far apart within t = 1; one projection would lose
  // the small singular values.
  const ModelParams params = test::params(-1.9, 0.3, 1.8, 3);
  const PhasePointS pt = test::point_s({5.9, 0.4, 0.3}, {2.0, -2.0, 1.5});
  std::vector<double> times;
  for (int k = 0; k <= 20; ++k) times.push_back(0.05 * k);
  const auto alg = su::solve_algebraic(params, pt, times);
  const RVector ref = su::lax_spectrum_direct(params, pt);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const RVector now = su::lax_spectrum_direct(params, alg.states[k]);
    EXPECT_LE(test::max_abs(now - ref), 1e-8 * (1.0 + test::max_abs(ref))) << "t " << times[k];
    EXPECT_TRUE(test::in_chamber(alg.states[k].q));
  }
}

TEST(SutherlandSolvers, NonHermitianFormGivesSamePositions) {
  std::mt19937_64 rng(39);
  const std::vector<double> times{0.0, 0.25, 0.5};
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 1 + trial % 3;
    const ModelParams params = cli::sample_params(rng, n);
    const PhasePointS pt = cli::sample_point_s(rng, n);
    su::AlgebraicOptions opts;
    opts.form = su::FlowForm::non_hermitian;
    const auto a = su::solve_algebraic(params, pt, times);
    const auto b = su::solve_algebraic(params, pt, times, opts);
    for (std::size_t k = 0; k < times.size(); ++k) EXPECT_LE(test::max_abs(a.states[k].q - b.states[k].q), 1e-7);
  }
}

TEST(SutherlandSolvers, NegativeTimesRunBackwards) {
  const ModelParams params = test::params(-1, 1, 0.3, 2);
  const PhasePointS pt = test::point_s({1.5, 0.6}, {0.4, 0.1});
  const std::vector<double> times{-0.5, 0.0, 0.5};
  const auto alg = su::solve_algebraic(params, pt, times);
  const auto ode = su::solve_ode(params, pt, times);
  for (std::size_t k = 0; k < times.size(); ++k) EXPECT_LE(state_distance(alg.states[k], ode.states[k]), 1e-6);
  EXPECT_EQ(alg.times, times);
}

TEST(SutherlandOde, ZeroCouplingsGiveFreeFlow) {
  const PhasePointS pt = test::point_s({3.0, 1.0}, {0.8, -0.2});
  const std::vector<double> times{0.0, 0.5, 1.0};
  const auto traj = su::solve_ode(SutherlandCouplings{0.0, 0.0, 0.0}, pt, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    EXPECT_LE(test::max_abs(traj.states[k].q - (pt.q + 0.5 * times[k] * pt.p)), 1e-12);
    EXPECT_LE(test::max_abs(traj.states[k].p - pt.p), 1e-15);
  }
}

TEST(SutherlandOde, TimeSymmetricFromRest) {
  const ModelParams params = test::params(-1, 1, 0, 1);
  const PhasePointS pt = test::point_s({1.0}, {0.0});
  const std::vector<double> forward{0.3, 0.7};
  const std::vector<double> backward{-0.3, -0.7};
  const auto a = su::solve_ode(params, pt, forward);
  const auto b = su::solve_ode(params, pt, backward);
  for (std::size_t k = 0; k < forward.size(); ++k) {
    EXPECT_NEAR(a.states[k].q(0), b.states[k].q(0), 1e-9);
    EXPECT_NEAR(a.states[k].p(0), -b.states[k].p(0), 1e-9);
  }
}

TEST(SutherlandOde, ConservesEnergy) {
  std::mt19937_64 rng(40);
  std::vector<double> times;
  for (int k = 0; k <= 20; ++k) times.push_back(0.1 * k);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 1 + trial % 4;
    const ModelParams params = cli::sample_params(rng, n);
    const PhasePointS pt = cli::sample_point_s(rng, n);
    const double h0 = su::hamiltonian_s(params, pt);
    const auto traj = su::solve_ode(params, pt, times);
    for (const auto& s : traj.states) {
      EXPECT_LE(std::abs(su::hamiltonian_s(params, s) - h0), 1e-8 * (1.0 + std::abs(h0)));
    }
  }
}

TEST(SutherlandErrors, InvalidInputs) {
  const ModelParams params = test::params(-1, 1, 0, 2);
  const std::vector<double> times{0.1};
  try {
    su::solve_algebraic(params, test::point_s({1.0, 2.0}, {0, 0}), times);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInChamber);
  }
  try {
    su::lax(test::params(-1, -2, 0, 2), test::point_s({2.0, 1.0}, {0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidParams);
  }
  const std::vector<double> bad{NAN};
  EXPECT_THROW(su::solve_algebraic(params, test::point_s({2.0, 1.0}, {0, 0}), bad), Error);
}
