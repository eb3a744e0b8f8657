#include "bcdual/duality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bcdual/errors.hpp"
#include "bcdual/rsvd.hpp"
#include "bcdual/sutherland.hpp"

namespace bcdual::duality {

ForwardResult s_to_r_detailed(const ModelParams& params, const PhasePointS& pt) {
  model::validate(params);
  const sutherland::SpectralDataS spec = sutherland::spectral_data(params, pt);

  ForwardResult out;
  out.point.lambda = spec.lambda_hat;
  model::require_chamber(out.point.lambda);

  const CMatrix h = rsvd::h_matrix(params, spec.lambda_hat);
  const RVector exp_2q = (2.0 * model::doubled(pt.q)).array().exp().matrix();
  const CMatrix m = h * spec.k.adjoint() * exp_2q.asDiagonal() * spec.k * h;
  const CVector z = rsvd::z_values(params, spec.lambda_hat);
  out.point.theta = rsvd::rapidities_from_diagonal(m, z);

  out.residuals.gauge = rsvd::magnitude_mismatch(m, rsvd::lax_matrix(params, out.point));
  out.residuals.frame = matkit::unitarity_residual(spec.k);
  for (Eigen::Index c = 0; c < m.rows(); ++c) {
    out.residuals.imag = std::max(out.residuals.imag, std::abs(m(c, c).imag()) / std::max(1.0, std::abs(m(c, c))));
  }
  if (out.residuals.gauge > kGaugeTol) {
    throw Error(ErrorCode::GaugeFailure, "forward map off-diagonal mismatch " + std::to_string(out.residuals.gauge));
  }
  return out;
}

InverseResult r_to_s_detailed(const ModelParams& params, const PhasePointR& pt) {
  // Only Abc and h are needed; lax_bc would also build the orbit vector.
  const matkit::PairedEigen eig = matkit::paired_eig(matkit::StructuredMatrix(
      rsvd::lax_bc_matrix(params, pt),
      matkit::Tag::hermitian | matkit::Tag::positive_definite | matkit::Tag::c_paired_inverse));
  const int n = params.n;

  InverseResult out;
  out.point.q = 0.5 * eig.half_spectrum.array().log().matrix();
  model::require_chamber(out.point.q);

  const CMatrix y = rsvd::h_matrix(params, pt.lambda) * model::doubled(pt.lambda).cast<Complex>().asDiagonal() *
                    rsvd::h_inverse(params, pt.lambda);
  const CMatrix conj = eig.frame.adjoint() * y * eig.frame;
  out.point.p.resize(n);
  for (int c = 0; c < n; ++c) {
    out.point.p(c) = conj(c, c).real();
    out.residuals.imag = std::max({out.residuals.imag, std::abs(conj(c, c).imag()),
                                   std::abs(conj(n + c, n + c) + conj(c, c))});
  }
  out.residuals.frame = matkit::unitarity_residual(eig.frame);
  out.residuals.gauge = rsvd::magnitude_mismatch(conj, sutherland::lax(params, out.point).L);
  if (out.residuals.gauge > kGaugeTol) {
    throw Error(ErrorCode::GaugeFailure, "inverse map off-diagonal mismatch " + std::to_string(out.residuals.gauge));
  }
  return out;
}

PhasePointR s_to_r(const ModelParams& params, const PhasePointS& pt) { return s_to_r_detailed(params, pt).point; }

PhasePointS r_to_s(const ModelParams& params, const PhasePointR& pt) { return r_to_s_detailed(params, pt).point; }

double sup_distance(const PhasePointS& a, const PhasePointS& b) {
  return std::max((a.q - b.q).cwiseAbs().maxCoeff(), (a.p - b.p).cwiseAbs().maxCoeff());
}

double sup_distance(const PhasePointR& a, const PhasePointR& b) {
  return std::max((a.lambda - b.lambda).cwiseAbs().maxCoeff(), (a.theta - b.theta).cwiseAbs().maxCoeff());
}

DualPair round_trip(const ModelParams& params, const PhasePointS& pt_s) {
  const ForwardResult fwd = s_to_r_detailed(params, pt_s);
  const InverseResult back = r_to_s_detailed(params, fwd.point);
  DualPair out{pt_s, fwd.point, {}};
  out.residuals.round_trip = sup_distance(back.point, pt_s);
  out.residuals.forward = fwd.residuals;
  out.residuals.inverse = back.residuals;
  return out;
}

DualPair reverse_round_trip(const ModelParams& params, const PhasePointR& pt_r) {
  const InverseResult back = r_to_s_detailed(params, pt_r);
  const ForwardResult fwd = s_to_r_detailed(params, back.point);
  DualPair out{back.point, pt_r, {}};
  out.residuals.round_trip = sup_distance(fwd.point, pt_r);
  out.residuals.forward = fwd.residuals;
  out.residuals.inverse = back.residuals;
  return out;
}

}  // namespace bcdual::duality
