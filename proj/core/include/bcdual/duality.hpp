#pragma once

#include "bcdual/model.hpp"

/// The action-angle duality map between the Sutherland phase space (q, p)
/// and the RSvD phase space (lambda, theta).
///
/// Forward direction: the Sutherland Lax matrix is conjugated into
/// h(lambda) Lambda h(lambda)^-1 by a K-frame built from the SVD of A + B;
/// the same frame turns e^{2Q} into A(lambda, theta) up to a paired phase,
/// and theta is read off its diagonal. Inverse direction: the spectrum of
/// the BC_n RSvD Lax matrix is {e^{+-2q}} and its frame turns
/// h Lambda h^-1 into L(q, p), whose diagonal carries p.
///
/// Only spectra and diagonals are used; both are invariant under the paired
/// phase ambiguity of the frames.
namespace bcdual::duality {

/// Relative off-diagonal magnitude mismatch above which a frame is rejected.
inline constexpr double kGaugeTol = 1e-6;

struct DualityResiduals {
  double gauge = 0.0;        // off-diagonal magnitude mismatch of the reconstructed Lax matrix
  double imag = 0.0;         // largest imaginary part among extracted diagonals
  double frame = 0.0;        // unitarity residual of the frame used
};

struct ForwardResult {
  PhasePointR point;
  DualityResiduals residuals;
};

struct InverseResult {
  PhasePointS point;
  DualityResiduals residuals;
};

ForwardResult s_to_r_detailed(const ModelParams& params, const PhasePointS& pt);
InverseResult r_to_s_detailed(const ModelParams& params, const PhasePointR& pt);

PhasePointR s_to_r(const ModelParams& params, const PhasePointS& pt);
PhasePointS r_to_s(const ModelParams& params, const PhasePointR& pt);

struct RoundTripResiduals {
  double round_trip = 0.0;  // sup-norm over all 2n coordinates
  DualityResiduals forward;
  DualityResiduals inverse;
};

struct DualPair {
  PhasePointS s_point;
  PhasePointR r_point;
  RoundTripResiduals residuals;
};

/// s_point = pt_s, r_point = S(pt_s); round_trip = |S^-1(S(pt_s)) - pt_s|_inf.
DualPair round_trip(const ModelParams& params, const PhasePointS& pt_s);
/// r_point = pt_r, s_point = S^-1(pt_r); round_trip = |S(S^-1(pt_r)) - pt_r|_inf.
DualPair reverse_round_trip(const ModelParams& params, const PhasePointR& pt_r);

double sup_distance(const PhasePointS& a, const PhasePointS& b);
double sup_distance(const PhasePointR& a, const PhasePointR& b);

}  // namespace bcdual::duality
