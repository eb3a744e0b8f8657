#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bcdual/duality.hpp"
#include "bcdual/errors.hpp"
#include "bcdual/rsvd.hpp"
#include "bcdual/sutherland.hpp"
#include "sampling.hpp"
#include "support.hpp"

using namespace bcdual;
namespace du = bcdual::duality;

namespace {

const ModelParams kGolden = test::params(-1, 1, 0, 1);

double sum_cosh_2q(const RVector& q) { return (2.0 * q.array()).cosh().sum(); }

}  // namespace

// Hand chain for (q, p) = (1, 0) at (mu, nu, kappa) = (-1, 1, 0):
//   A + B = i / sinh 2, so s = lambda_hat = 1 / sinh 2.
//   z(lambda_hat) = -(1 + i sinh 2), |z| = sqrt(1 + sinh^2 2) = cosh 2.
//   h = 1 and e^{2Q} = diag(e^2, e^-2) conjugated by the frame of
//   [[0, i s], [-i s, 0]], whose (1,1) entry is (e^2 + e^-2) / 2 = cosh 2.
//   Hence M_11 / |z| = 1 and theta_hat = 0, and H^R = cosh 2.
TEST(DualityGolden, HandChain) {
  const double lam = 1.0 / std::sinh(2.0);
  EXPECT_NEAR(lam, 0.2757206, 1e-7);
  const double absz = std::hypot(1.0, 1.0 / lam);
  EXPECT_NEAR(absz, std::cosh(2.0), 1e-14);

  const PhasePointR r = du::s_to_r(kGolden, test::point_s({1.0}, {0.0}));
  EXPECT_NEAR(r.lambda(0), lam, 1e-12);
  EXPECT_NEAR(r.theta(0), 0.0, 1e-12);
  EXPECT_NEAR(rsvd::hamiltonian_r(kGolden, r), std::cosh(2.0), 1e-10);
  EXPECT_NEAR(rsvd::hamiltonian_r(kGolden, r), 3.7621957, 1e-6);
}

TEST(DualityGolden, InverseAndRoundTrip) {
  const PhasePointS s = du::r_to_s(kGolden, test::point_r({0.2757206}, {0.0}));
  EXPECT_NEAR(s.q(0), 1.0, 1e-6);
  EXPECT_NEAR(s.p(0), 0.0, 1e-6);
  const du::DualPair pair = du::round_trip(kGolden, test::point_s({1.0}, {0.0}));
  EXPECT_LE(pair.residuals.round_trip, 1e-9);
}

TEST(DualityRoundTrip, RandomPointsBothDirections) {
  std::mt19937_64 rng(51);
  double worst = 0.0;
  double worst_reverse = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const ModelParams params = cli::sample_params(rng, n);
    const du::DualPair a = du::round_trip(params, cli::sample_point_s(rng, n));
    const du::DualPair b = du::reverse_round_trip(params, cli::sample_point_r(rng, n));
    worst = std::max(worst, a.residuals.round_trip);
    worst_reverse = std::max(worst_reverse, b.residuals.round_trip);
    EXPECT_TRUE(test::in_chamber(a.r_point.lambda));
    EXPECT_TRUE(test::in_chamber(b.s_point.q));
    EXPECT_LE(a.residuals.forward.gauge, du::kGaugeTol);
    EXPECT_LE(b.residuals.inverse.imag, 1e-8);
  }
  EXPECT_LE(worst, 1e-7);
  EXPECT_LE(worst_reverse, 1e-7);
}

TEST(DualitySpectra, SutherlandLaxHasPlusMinusLambdaHat) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 4;
    const ModelParams params = cli::sample_params(rng, n);
    const PhasePointS pt = cli::sample_point_s(rng, n);
    const PhasePointR r = du::s_to_r(params, pt);
    Eigen::ComplexEigenSolver<CMatrix> es(sutherland::lax(params, pt).L, false);
    const RVector eig = test::sorted_desc(es.eigenvalues().real());
    const RVector expected = test::sorted_desc(model::doubled(r.lambda));
    EXPECT_LE(test::max_abs(eig - expected), 1e-10 * (1.0 + expected(0)));
  }
}

TEST(DualitySpectra, RsvdBcHasExponentialsOfPositions) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 4;
    const ModelParams params = cli::sample_params(rng, n);
    const PhasePointR pt = cli::sample_point_r(rng, n);
    const PhasePointS s = du::r_to_s(params, pt);
    const CMatrix abc = rsvd::lax_bc_matrix(params, pt);
    const RVector eig = matkit::hermitian_eig_desc(CMatrix(0.5 * (abc + abc.adjoint()))).values;
    const RVector expected = test::sorted_desc((2.0 * model::doubled(s.q).array()).exp().matrix());
    EXPECT_LE(test::max_abs(eig - expected), 1e-9 * expected(0));
  }
}

TEST(DualityHamiltonians, CrossIdentities) {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 4;
    const ModelParams params = cli::sample_params(rng, n);
    const PhasePointS s = cli::sample_point_s(rng, n);
    const double hr = rsvd::hamiltonian_r(params, du::s_to_r(params, s));
    EXPECT_LE(std::abs(hr - sum_cosh_2q(s.q)), 1e-8 * sum_cosh_2q(s.q));

    const PhasePointR r = cli::sample_point_r(rng, n);
    const double hs = sutherland::hamiltonian_s(params, du::r_to_s(params, r));
    const double expected = 0.5 * r.lambda.squaredNorm();
    EXPECT_LE(std::abs(hs - expected), 1e-8 * expected);
  }
}

TEST(DualityActionAngle, SutherlandFlowIsLinearInDualCoordinates) {
  std::mt19937_64 rng(55);
  const std::vector<double> times{0.0, 0.25, 0.5, 0.75, 1.0};
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 1 + trial % 4;
    const ModelParams params = cli::sample_params(rng, n);
    const PhasePointS pt = cli::sample_point_s(rng, n);
    const auto traj = sutherland::solve_algebraic(params, pt, times);
    const PhasePointR r0 = du::s_to_r(params, pt);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const PhasePointR r = du::s_to_r(params, traj.states[k]);
      EXPECT_LE(test::max_abs(r.lambda - r0.lambda), 1e-7);
      EXPECT_LE(test::max_abs(r.theta - r0.theta - 0.5 * times[k] * r0.lambda), 1e-5);
    }
  }
}

TEST(DualityActionAngle, RsvdFlowIsLinearInDualCoordinates) {
  std::mt19937_64 rng(56);
  const std::vector<double> times{0.0, 0.25, 0.5, 0.75, 1.0};
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 1 + trial % 4;
    const ModelParams params = cli::sample_params(rng, n);
    const PhasePointR pt = cli::sample_point_r(rng, n);
    const auto traj = rsvd::solve_algebraic(params, pt, times);
    const PhasePointS s0 = du::r_to_s(params, pt);
    const RVector rate = -(2.0 * s0.q.array()).sinh().matrix();
    for (std::size_t k = 0; k < times.size(); ++k) {
      const PhasePointS s = du::r_to_s(params, traj.states[k]);
      EXPECT_LE(test::max_abs(s.q - s0.q), 1e-7);
      EXPECT_LE(test::max_abs(s.p - s0.p - times[k] * rate), 1e-5 * (1.0 + test::max_abs(rate)));
    }
  }
}

TEST(DualityDistance, SupNorm) {
  EXPECT_DOUBLE_EQ(du::sup_distance(test::point_s({2, 1}, {0, 0}), test::point_s({2, 1.5}, {0.2, 0})), 0.5);
  EXPECT_DOUBLE_EQ(du::sup_distance(test::point_r({2}, {0}), test::point_r({2}, {-0.3})), 0.3);
}

TEST(DualityErrors, InvalidInputs) {
  try {
    du::s_to_r(kGolden, test::point_s({-1.0}, {0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInChamber);
  }
  try {
    du::r_to_s(test::params(-1, -2, 0, 1), test::point_r({1.0}, {0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidParams);
  }
  try {
    du::s_to_r(test::params(-1, 1, 1, 1), test::point_s({20.0}, {0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateSpectrum);
  }
}
