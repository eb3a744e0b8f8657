#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace bcdual {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

namespace matkit {

// Structure and reconstruction tolerances are relative to the Frobenius norm
// of the matrix under test.
inline constexpr double kStructTol = 1e-10;
inline constexpr double kReconTol = 1e-10;
inline constexpr double kGapTol = 1e-8;

enum class Tag : std::uint8_t {
  hermitian = 1u << 0,
  positive_definite = 1u << 1,
  c_paired_anti = 1u << 2,
  c_paired_inverse = 1u << 3,
};

class Tags {
 public:
  constexpr Tags() = default;
  constexpr Tags(Tag t) : bits_(static_cast<std::uint8_t>(t)) {}  // NOLINT(google-explicit-constructor)

  constexpr bool has(Tag t) const { return (bits_ & static_cast<std::uint8_t>(t)) != 0; }
  constexpr Tags operator|(Tags o) const { return Tags(static_cast<std::uint8_t>(bits_ | o.bits_)); }
  constexpr bool operator==(const Tags&) const = default;

 private:
  constexpr explicit Tags(std::uint8_t bits) : bits_(bits) {}
  std::uint8_t bits_ = 0;
};

constexpr Tags operator|(Tag a, Tag b) { return Tags(a) | Tags(b); }

/// Block swap matrix [[0, 1_n], [1_n, 0]] of size 2n.
CMatrix swap_matrix(int n);

/// Dense even-dimensional complex matrix whose tags have been checked on
/// construction. Throws NotHermitian / NotPaired / NotPositiveDefinite when a
/// requested tag does not hold within tolerance.
class StructuredMatrix {
 public:
  StructuredMatrix(CMatrix entries, Tags tags);

  const CMatrix& entries() const { return entries_; }
  Tags tags() const { return tags_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  int half_dim() const { return dim() / 2; }

 private:
  CMatrix entries_;
  Tags tags_;
};

double hermitian_residual(const CMatrix& m);
/// ‖C·M·C + M‖_F
double anti_pairing_residual(const CMatrix& m);
/// ‖C·M·C·M − 1‖_F; the product form avoids inverting ill-conditioned M.
double inverse_pairing_residual(const CMatrix& m);
double unitarity_residual(const CMatrix& u);

struct HermitianEigen {
  RVector values;  // descending
  CMatrix frame;   // unitary, columns are eigenvectors
};

HermitianEigen hermitian_eig_desc(const StructuredMatrix& m);
HermitianEigen hermitian_eig_desc(const CMatrix& m);

enum class Pairing { anti, inverse };

/// Eigendecomposition of a C-paired Hermitian matrix with the frame gauge
/// fixed so that column n+c equals C times column c. The frame then lies in
/// U(n) x U(n) and only the simultaneous phase of columns (c, n+c) remains free.
struct PairedEigen {
  RVector half_spectrum;  // n values, strictly descending
  CMatrix frame;
  Pairing pairing = Pairing::anti;

  /// frame · diag(d, counterpart(d)) · frame*
  CMatrix reconstruct() const;
};

PairedEigen paired_eig(const StructuredMatrix& m);

struct SvdTriple {
  CMatrix u;
  RVector s;  // descending, nonnegative
  CMatrix v;
};

SvdTriple svd_square(const CMatrix& m);

/// One-sided Jacobi SVD (LAPACK zgesvj). When m = G·D with G well conditioned
/// and D diagonal, every singular value keeps high relative accuracy however
/// wide the range of D; svd_square only guarantees accuracy relative to s_1.
SvdTriple svd_relative(const CMatrix& m);

StructuredMatrix sqrt_pd(const StructuredMatrix& m);

/// Matrix exponential by scaling and squaring. Throws Overflow when the input
/// or the result is not finite.
CMatrix expm(const CMatrix& m);

}  // namespace matkit
}  // namespace bcdual
