#pragma once

#include <span>

#include "bcdual/matkit.hpp"

namespace bcdual {

/// Parameter triple (mu, nu, kappa) shared by both models, plus the particle
/// number n. Matrices are N x N with N = 2n.
struct ModelParams {
  double mu = -1.0;
  double nu = 1.0;
  double kappa = 0.0;
  int n = 1;

  int dim() const { return 2 * n; }
};

/// Sutherland coupling constants (g^2, g1^2, g2^2).
struct SutherlandCouplings {
  double g_sq = 1.0;
  double g1_sq = 0.0;
  double g2_sq = 0.5;
};

struct PhasePointS {
  RVector q;
  RVector p;

  int n() const { return static_cast<int>(q.size()); }
};

struct PhasePointR {
  RVector lambda;
  RVector theta;

  int n() const { return static_cast<int>(lambda.size()); }
};

namespace model {

/// Minimum distance to the chamber walls x_c = x_{c+1} and x_n = 0.
inline constexpr double kChamberMargin = 1e-9;

/// Checks mu != 0, nu != 0, nu != 2 mu, nu + kappa != 0, nu kappa >= 0 and
/// n >= 1. Throws InvalidParams naming the first violated constraint.
const ModelParams& validate(const ModelParams& params);

bool chamber_check(std::span<const double> x);
/// Throws NotInChamber carrying the first offending (0-based) index.
void require_chamber(std::span<const double> x);
void require_chamber(const RVector& x);

void require_point(const ModelParams& params, const PhasePointS& pt);
void require_point(const ModelParams& params, const PhasePointR& pt);

/// (mu^2, nu kappa / 2, (nu - kappa)^2 / 2)
SutherlandCouplings couplings_from_params(const ModelParams& params);

/// Inverse map on the representative branch mu = -|g|; the result satisfies
/// mu < 0, nu > 0, kappa >= 0.
ModelParams params_from_couplings(const SutherlandCouplings& c, int n);

/// E_a = -E_{n+a} = 1.
CVector e_vector(int n);

/// xi(V) = i mu (V V* - 1) + i (mu - nu) C, anti-Hermitian. V must satisfy
/// V*V = N and C V + V = 0.
matkit::StructuredMatrix xi_of(const ModelParams& params, const CVector& v);

/// Q = diag(x, -x) as a real vector of length 2n.
RVector doubled(const RVector& x);

}  // namespace model
}  // namespace bcdual
