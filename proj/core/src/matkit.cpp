#include "bcdual/matkit.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "bcdual/errors.hpp"

extern "C" {
// LAPACK one-sided Jacobi SVD; trailing arguments are the hidden lengths of
// the character arguments.
void zgesvj_(const char* joba, const char* jobu, const char* jobv, const int* m, const int* n, std::complex<double>* a,
             const int* lda, double* sva, const int* mv, std::complex<double>* v, const int* ldv,
             std::complex<double>* cwork, const int* lwork, double* rwork, const int* lrwork, int* info,
             std::size_t, std::size_t, std::size_t);
}

namespace bcdual::matkit {

namespace {

bool all_finite(const CMatrix& m) {
  return m.allFinite();
}

void require_square_even(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw Error(ErrorCode::DomainError, "expected a non-empty square matrix of even dimension, got " +
                                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// C·M·C without forming C: swap both row blocks and column blocks.
CMatrix swap_conjugate(const CMatrix& m) {
  const Eigen::Index n = m.rows() / 2;
  CMatrix out(m.rows(), m.cols());
  out.topLeftCorner(n, n) = m.bottomRightCorner(n, n);
  out.topRightCorner(n, n) = m.bottomLeftCorner(n, n);
  out.bottomLeftCorner(n, n) = m.topRightCorner(n, n);
  out.bottomRightCorner(n, n) = m.topLeftCorner(n, n);
  return out;
}

double struct_tol(const CMatrix& m) { return kStructTol * m.norm(); }

double inverse_struct_tol(const CMatrix& m) {
  const double nrm = m.norm();
  return kStructTol * std::max(1.0, nrm * nrm);
}

HermitianEigen eig_unchecked(const CMatrix& m) {
  // Symmetrize so the solver only ever sees an exactly Hermitian input.
  const CMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "Hermitian eigensolver did not converge");
  }
  const Eigen::Index dim = m.rows();
  HermitianEigen out;
  out.values = solver.eigenvalues().reverse();
  out.frame = solver.eigenvectors().rowwise().reverse();
  if (!out.values.allFinite() || dim == 0) {
    throw Error(ErrorCode::NoConvergence, "Hermitian eigensolver produced non-finite values");
  }
  return out;
}

}  // namespace

CMatrix swap_matrix(int n) {
  CMatrix c = CMatrix::Zero(2 * n, 2 * n);
  c.topRightCorner(n, n).setIdentity();
  c.bottomLeftCorner(n, n).setIdentity();
  return c;
}

double hermitian_residual(const CMatrix& m) { return (m - m.adjoint()).norm(); }

double anti_pairing_residual(const CMatrix& m) { return (swap_conjugate(m) + m).norm(); }

double inverse_pairing_residual(const CMatrix& m) {
  return (swap_conjugate(m) * m - CMatrix::Identity(m.rows(), m.cols())).norm();
}

double unitarity_residual(const CMatrix& u) {
  return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).norm();
}

StructuredMatrix::StructuredMatrix(CMatrix entries, Tags tags) : entries_(std::move(entries)), tags_(tags) {
  require_square_even(entries_);
  if (!all_finite(entries_)) {
    throw Error(ErrorCode::DomainError, "matrix has non-finite entries");
  }
  const bool wants_hermitian = tags_.has(Tag::hermitian) || tags_.has(Tag::positive_definite);
  if (wants_hermitian) {
    const double res = hermitian_residual(entries_);
    if (res > struct_tol(entries_)) {
      throw Error(ErrorCode::NotHermitian, "Hermiticity residual " + std::to_string(res));
    }
    tags_ = tags_ | Tag::hermitian;
  }
  if (tags_.has(Tag::c_paired_anti)) {
    const double res = anti_pairing_residual(entries_);
    if (res > struct_tol(entries_)) {
      throw Error(ErrorCode::NotPaired, "anti-pairing residual " + std::to_string(res));
    }
  }
  if (tags_.has(Tag::c_paired_inverse)) {
    const double res = inverse_pairing_residual(entries_);
    if (res > inverse_struct_tol(entries_)) {
      throw Error(ErrorCode::NotPaired, "inverse-pairing residual " + std::to_string(res));
    }
  }
  if (tags_.has(Tag::positive_definite)) {
    const double smallest = eig_unchecked(entries_).values(entries_.rows() - 1);
    if (!(smallest > 0.0)) {
      throw Error(ErrorCode::NotPositiveDefinite, "smallest eigenvalue " + std::to_string(smallest));
    }
  }
}

HermitianEigen hermitian_eig_desc(const StructuredMatrix& m) {
  if (!m.tags().has(Tag::hermitian)) {
    throw Error(ErrorCode::NotHermitian, "matrix is not tagged hermitian");
  }
  return eig_unchecked(m.entries());
}

HermitianEigen hermitian_eig_desc(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DomainError, "hermitian_eig_desc needs a square matrix");
  }
  const double res = hermitian_residual(m);
  if (res > struct_tol(m)) {
    throw Error(ErrorCode::NotHermitian, "Hermiticity residual " + std::to_string(res));
  }
  return eig_unchecked(m);
}

CMatrix PairedEigen::reconstruct() const {
  const Eigen::Index n = half_spectrum.size();
  RVector full(2 * n);
  full.head(n) = half_spectrum;
  if (pairing == Pairing::anti) {
    full.tail(n) = -half_spectrum;
  } else {
    full.tail(n) = half_spectrum.cwiseInverse();
  }
  return frame * full.asDiagonal() * frame.adjoint();
}

PairedEigen paired_eig(const StructuredMatrix& m) {
  const bool anti = m.tags().has(Tag::c_paired_anti);
  const bool inverse = m.tags().has(Tag::c_paired_inverse);
  if (anti == inverse) {
    throw Error(ErrorCode::NotPaired, "paired_eig needs exactly one of c_paired_anti / c_paired_inverse");
  }
  const HermitianEigen eig = hermitian_eig_desc(m);
  const int n = m.half_dim();
  const double spread = std::max(std::abs(eig.values(0)), std::abs(eig.values(2 * n - 1)));

  PairedEigen out;
  out.pairing = anti ? Pairing::anti : Pairing::inverse;
  out.half_spectrum = eig.values.head(n);

  // Anti-paired spectra are additive, so gaps are measured against the
  // spectral radius. Inverse-paired spectra e^{+-2q} are multiplicative: a
  // gap is relative to the larger of the two values, i.e. a gap in q.
  const auto gap_scale = [&](double larger) { return anti ? spread : larger; };
  const double partner = anti ? -out.half_spectrum(n - 1) : 1.0 / out.half_spectrum(n - 1);
  const double floor_value = anti ? 0.0 : 1.0;
  if (!(out.half_spectrum(n - 1) > floor_value) ||
      out.half_spectrum(n - 1) - partner < kGapTol * gap_scale(out.half_spectrum(n - 1))) {
    throw Error(ErrorCode::DegenerateSpectrum, "half spectrum touches its partner", n - 1);
  }
  for (int c = 0; c + 1 < n; ++c) {
    if (out.half_spectrum(c) - out.half_spectrum(c + 1) < kGapTol * gap_scale(out.half_spectrum(c))) {
      throw Error(ErrorCode::DegenerateSpectrum, "repeated eigenvalue in half spectrum", c);
    }
  }

  out.frame.resize(2 * n, 2 * n);
  out.frame.leftCols(n) = eig.frame.leftCols(n);
  out.frame.block(0, n, n, n) = eig.frame.block(n, 0, n, n);
  out.frame.block(n, n, n, n) = eig.frame.block(0, 0, n, n);
  return out;
}

SvdTriple svd_square(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DomainError, "svd_square needs a square matrix");
  }
  if (!all_finite(m)) {
    throw Error(ErrorCode::NoConvergence, "non-finite input to SVD");
  }
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdTriple out{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  if (!out.s.allFinite() || !out.u.allFinite() || !out.v.allFinite()) {
    throw Error(ErrorCode::NoConvergence, "SVD produced non-finite factors");
  }
  return out;
}

SvdTriple svd_relative(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DomainError, "svd_relative needs a non-empty square matrix");
  }
  if (!all_finite(m)) {
    throw Error(ErrorCode::NoConvergence, "non-finite input to SVD");
  }
  const int dim = static_cast<int>(m.rows());
  CMatrix a = m;
  CMatrix v(dim, dim);
  RVector sva(dim);
  const int lwork = 2 * dim;
  const int lrwork = std::max(6, dim);
  std::vector<Complex> cwork(lwork);
  std::vector<double> rwork(lrwork);
  int info = 0;
  zgesvj_("G", "U", "V", &dim, &dim, a.data(), &dim, sva.data(), &dim, v.data(), &dim, cwork.data(), &lwork,
          rwork.data(), &lrwork, &info, 1, 1, 1);
  if (info < 0) throw Error(ErrorCode::DomainError, "zgesvj rejected argument " + std::to_string(-info));
  if (info > 0) throw Error(ErrorCode::NoConvergence, "one-sided Jacobi did not converge");

  // rwork[0] is a scale factor applied to avoid overflow; sort defensively.
  const RVector s = rwork[0] * sva;
  std::vector<int> order(dim);
  for (int i = 0; i < dim; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&s](int x, int y) { return s(x) > s(y); });
  SvdTriple out{CMatrix(dim, dim), RVector(dim), CMatrix(dim, dim)};
  for (int i = 0; i < dim; ++i) {
    out.u.col(i) = a.col(order[i]);
    out.s(i) = s(order[i]);
    out.v.col(i) = v.col(order[i]);
  }
  if (!out.s.allFinite() || !out.u.allFinite() || !out.v.allFinite()) {
    throw Error(ErrorCode::NoConvergence, "SVD produced non-finite factors");
  }
  return out;
}

StructuredMatrix sqrt_pd(const StructuredMatrix& m) {
  const HermitianEigen eig = hermitian_eig_desc(m);
  const double smallest = eig.values(eig.values.size() - 1);
  if (!(smallest > 0.0)) {
    throw Error(ErrorCode::NotPositiveDefinite, "smallest eigenvalue " + std::to_string(smallest));
  }
  CMatrix root = eig.frame * eig.values.cwiseSqrt().asDiagonal() * eig.frame.adjoint();
  root = 0.5 * (root + root.adjoint());
  return StructuredMatrix(std::move(root), Tag::hermitian | Tag::positive_definite);
}

CMatrix expm(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DomainError, "expm needs a square matrix");
  }
  if (!all_finite(m)) {
    throw Error(ErrorCode::Overflow, "non-finite input to expm");
  }
  if (m.isZero(0.0)) {
    return CMatrix::Identity(m.rows(), m.cols());
  }
  CMatrix out = m.exp();
  if (!all_finite(out)) {
    throw Error(ErrorCode::Overflow, "matrix exponential is not representable");
  }
  return out;
}

}  // namespace bcdual::matkit
