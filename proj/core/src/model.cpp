#include "bcdual/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bcdual/errors.hpp"

namespace bcdual::model {

namespace {

constexpr double kParamEqualityTol = 1e-12;

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kParamEqualityTol * std::max({1.0, std::abs(a), std::abs(b)});
}

void invalid(const std::string& reason) { throw Error(ErrorCode::InvalidParams, reason); }

}  // namespace

const ModelParams& validate(const ModelParams& params) {
  if (params.n < 1) invalid("n must be at least 1");
  if (!std::isfinite(params.mu) || !std::isfinite(params.nu) || !std::isfinite(params.kappa)) {
    invalid("parameters must be finite");
  }
  if (params.mu == 0.0) invalid("mu must be non-zero");
  if (params.nu == 0.0) invalid("nu must be non-zero");
  if (nearly_equal(params.nu, 2.0 * params.mu)) invalid("nu must differ from 2 mu");
  if (nearly_equal(params.nu, -params.kappa)) invalid("nu + kappa must be non-zero");
  if (params.nu * params.kappa < 0.0) invalid("nu kappa < 0 is not supported");
  return params;
}

bool chamber_check(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return false;
  for (std::size_t c = 0; c < n; ++c) {
    if (!std::isfinite(x[c])) return false;
    const double next = c + 1 < n ? x[c + 1] : 0.0;
    if (!(x[c] - next >= kChamberMargin)) return false;
  }
  return true;
}

void require_chamber(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) throw Error(ErrorCode::NotInChamber, "empty coordinate vector", 0);
  for (std::size_t c = 0; c < n; ++c) {
    const double next = c + 1 < n ? x[c + 1] : 0.0;
    if (!std::isfinite(x[c]) || !(x[c] - next >= kChamberMargin)) {
      const std::string wall = c + 1 < n ? "x_" + std::to_string(c + 1) + " > x_" + std::to_string(c + 2)
                                         : "x_" + std::to_string(n) + " > 0";
      throw Error(ErrorCode::NotInChamber, "violates " + wall, static_cast<int>(c));
    }
  }
}

void require_chamber(const RVector& x) { require_chamber(std::span<const double>(x.data(), x.size())); }

void require_point(const ModelParams& params, const PhasePointS& pt) {
  if (pt.q.size() != params.n || pt.p.size() != params.n) {
    invalid("phase point dimension does not match n = " + std::to_string(params.n));
  }
  require_chamber(pt.q);
  if (!pt.p.allFinite()) throw Error(ErrorCode::DomainError, "momenta must be finite");
}

void require_point(const ModelParams& params, const PhasePointR& pt) {
  if (pt.lambda.size() != params.n || pt.theta.size() != params.n) {
    invalid("phase point dimension does not match n = " + std::to_string(params.n));
  }
  require_chamber(pt.lambda);
  if (!pt.theta.allFinite()) throw Error(ErrorCode::DomainError, "rapidities must be finite");
}

SutherlandCouplings couplings_from_params(const ModelParams& params) {
  validate(params);
  const double diff = params.nu - params.kappa;
  return {params.mu * params.mu, 0.5 * params.nu * params.kappa, 0.5 * diff * diff};
}

ModelParams params_from_couplings(const SutherlandCouplings& c, int n) {
  const bool finite = std::isfinite(c.g_sq) && std::isfinite(c.g1_sq) && std::isfinite(c.g2_sq);
  if (!finite || !(c.g_sq > 0.0) || c.g1_sq < 0.0 || c.g2_sq < 0.0 || !(c.g1_sq + c.g2_sq > 0.0)) {
    throw Error(ErrorCode::InvalidCouplings, "need g^2 > 0, g1^2 >= 0, g2^2 >= 0 and g1^2 + g2^2 > 0");
  }
  const double abs_g2 = std::sqrt(c.g2_sq);
  const double denom = abs_g2 + std::sqrt(c.g2_sq + 4.0 * c.g1_sq);
  ModelParams out;
  out.mu = -std::sqrt(c.g_sq);
  out.nu = denom / std::sqrt(2.0);
  out.kappa = 2.0 * std::sqrt(2.0) * c.g1_sq / denom;
  out.n = n;
  return validate(out);
}

CVector e_vector(int n) {
  CVector e(2 * n);
  e.head(n).setConstant(1.0);
  e.tail(n).setConstant(-1.0);
  return e;
}

matkit::StructuredMatrix xi_of(const ModelParams& params, const CVector& v) {
  const int dim = static_cast<int>(v.size());
  if (dim == 0 || dim % 2 != 0) {
    throw Error(ErrorCode::InvalidOrbitVector, "vector length must be even and positive");
  }
  const int n = dim / 2;
  const double norm_sq = v.squaredNorm();
  const double pair_res = (v.head(n) + v.tail(n)).norm();
  const double tol = matkit::kStructTol * dim;
  if (std::abs(norm_sq - dim) > tol || pair_res > tol) {
    throw Error(ErrorCode::InvalidOrbitVector,
                "need V*V = N and C V + V = 0 (norm^2 " + std::to_string(norm_sq) + ", pairing " +
                    std::to_string(pair_res) + ")");
  }
  const Complex i(0.0, 1.0);
  CMatrix xi = i * params.mu * (v * v.adjoint() - CMatrix::Identity(dim, dim)) +
               i * (params.mu - params.nu) * matkit::swap_matrix(n);
  return matkit::StructuredMatrix(std::move(xi), {});
}

RVector doubled(const RVector& x) {
  RVector out(2 * x.size());
  out << x, -x;
  return out;
}

}  // namespace bcdual::model
