#pragma once

#include <optional>
#include <span>

#include "bcdual/matkit.hpp"
#include "bcdual/model.hpp"
#include "bcdual/trajectory.hpp"

/// Rational BC_n Ruijsenaars-Schneider-van Diejen model.
namespace bcdual::rsvd {

/// z_a(lambda) = -(1 + i nu / lambda_a) prod_{d != a} (1 + 2 i mu / (lambda_a - lambda_d))
///                                                   (1 + 2 i mu / (lambda_a + lambda_d))
CVector z_values(const ModelParams& params, const RVector& lambda);

/// The positive-definite C_n Lax matrix (no V, no square root). Cheap path
/// for solvers; lax_A() adds the derived vectors.
CMatrix lax_matrix(const ModelParams& params, const PhasePointR& pt);

struct RsvdLax {
  std::optional<matkit::StructuredMatrix> A;    // hermitian, positive_definite
  std::optional<matkit::StructuredMatrix> Abc;  // + c_paired_inverse; filled by lax_bc
  CMatrix h;                                    // filled by lax_bc
  CVector z;
  CVector F;
  CVector V;  // A^{-1/2} F
};

RsvdLax lax_A(const ModelParams& params, const PhasePointR& pt);

double alpha(double x, double kappa);
/// beta is purely imaginary; this returns its imaginary part.
double beta_imag(double x, double kappa);

/// [[alpha(lambda), beta(lambda)], [-beta(lambda), alpha(lambda)]]
CMatrix h_matrix(const ModelParams& params, const RVector& lambda);
/// Closed-form inverse [[alpha, -beta], [beta, alpha]], valid since alpha^2 + beta^2 = 1.
CMatrix h_inverse(const ModelParams& params, const RVector& lambda);

/// h^-1 A h^-1, the BC_n Lax matrix.
CMatrix lax_bc_matrix(const ModelParams& params, const PhasePointR& pt);
RsvdLax lax_bc(const ModelParams& params, const PhasePointR& pt);

double hamiltonian_r(const ModelParams& params, const PhasePointR& pt);

using TrajectoryR = Trajectory<PhasePointR>;

struct AlgebraicOptions {
  double diagnostic_tol = 1e-7;
};

/// Solution through the linear matrix flow h0 Lambda0 h0^-1 - t (Abc0 - Abc0^-1) / 2.
TrajectoryR solve_algebraic(const ModelParams& params, const PhasePointR& pt0, std::span<const double> times,
                            const AlgebraicOptions& options = {});

struct OdeOptions {
  double tolerance = 1e-10;
  double fd_relative_step = 1e-5;
};

/// Direct integration of theta' = dH/dlambda / 2, lambda' = -dH/dtheta / 2
/// with fourth-order central-difference partials of H^R.
TrajectoryR solve_ode(const ModelParams& params, const PhasePointR& pt0, std::span<const double> times,
                      const OdeOptions& options = {});

/// Rapidities from M = h(lambda) k* Abc k h(lambda), whose diagonal equals
/// that of A(lambda, theta). Uses whichever of M_aa, M_{n+a,n+a} is larger
/// (their product is |z_a|^2), so the result keeps full relative accuracy.
RVector rapidities_from_diagonal(const CMatrix& m, const CVector& z);

/// max_ab | |M_ab| - |A_ab| | / max(1, max |A_ab|)
double magnitude_mismatch(const CMatrix& m, const CMatrix& a);

}  // namespace bcdual::rsvd
