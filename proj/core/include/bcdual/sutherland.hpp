#pragma once

#include <span>

#include "bcdual/matkit.hpp"
#include "bcdual/model.hpp"
#include "bcdual/trajectory.hpp"

/// Hyperbolic BC_n Sutherland model: Lax matrix, Hamiltonian, spectral data
/// and two independent solvers (projection method and direct ODE).
namespace bcdual::sutherland {

struct LaxS {
  CMatrix L;                 // Lp - i kappa C, non-Hermitian for kappa != 0
  matkit::StructuredMatrix Lp;  // [[A, B], [-B, -A]]
  CMatrix A;                 // Hermitian, diagonal = p
  CMatrix B;                 // anti-Hermitian
};

LaxS lax(const ModelParams& params, const PhasePointS& pt);

double hamiltonian_s(const ModelParams& params, const PhasePointS& pt);
double hamiltonian_s(const SutherlandCouplings& couplings, const PhasePointS& pt);

/// Partial derivatives (dH/dq, dH/dp).
std::pair<RVector, RVector> hamiltonian_s_gradient(const SutherlandCouplings& couplings, const PhasePointS& pt);

struct SpectralDataS {
  CMatrix k;            // K-frame with Lp = k diag(s, -s) k^-1
  RVector s;            // singular values of A + B, descending
  RVector lambda_hat;   // sqrt(s^2 - kappa^2), descending, positive
};

/// Diagonalizes Lp through the SVD of A + B. Throws DegenerateSpectrum when
/// s has a repeated value or s_n is not safely above |kappa|.
SpectralDataS spectral_data(const ModelParams& params, const PhasePointS& pt);

/// Eigenvalues of the non-Hermitian L computed by a general complex
/// eigensolver, real parts sorted descending. Independent of spectral_data.
RVector lax_spectrum_direct(const ModelParams& params, const PhasePointS& pt);

using TrajectoryS = Trajectory<PhasePointS>;

enum class FlowForm {
  hermitian,      // e^{Q0} e^{t L0/2} e^{t L0*/2} e^{Q0}
  non_hermitian,  // e^{2 Q0} e^{t L0/2} e^{t L0*/2}, positions only cross-check
};

struct AlgebraicOptions {
  FlowForm form = FlowForm::hermitian;
  double diagnostic_tol = 1e-8;
};

/// Projection-method solution of the F_2 = tr(Y^2)/4 flow.
TrajectoryS solve_algebraic(const ModelParams& params, const PhasePointS& pt0, std::span<const double> times,
                            const AlgebraicOptions& options = {});

struct OdeOptions {
  double tolerance = 1e-10;
};

/// Direct integration of q' = dH/dp / 2, p' = -dH/dq / 2 (the symplectic
/// form carries a factor 2).
TrajectoryS solve_ode(const ModelParams& params, const PhasePointS& pt0, std::span<const double> times,
                      const OdeOptions& options = {});
/// Same, with explicit couplings. Zero couplings are accepted here.
TrajectoryS solve_ode(const SutherlandCouplings& couplings, const PhasePointS& pt0, std::span<const double> times,
                      const OdeOptions& options = {});

}  // namespace bcdual::sutherland
