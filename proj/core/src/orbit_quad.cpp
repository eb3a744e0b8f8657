#include "orbit_quad.hpp"

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <Eigen/Eigenvalues>

#include "bcdual/errors.hpp"
#include "rsvd_entries.hpp"

using Quad = boost::multiprecision::cpp_bin_float_quad;
using QuadComplex = boost::multiprecision::cpp_complex_quad;

namespace Eigen {
template <>
struct NumTraits<Quad> : GenericNumTraits<Quad> {
  using Real = Quad;
  using NonInteger = Quad;
  using Literal = Quad;
  using Nested = Quad;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 1, AddCost = 4, MulCost = 8 };
  static Quad dummy_precision() { return Quad(1e-30); }
};
}  // namespace Eigen

namespace bcdual::detail {

CVector orbit_vector_quad(const ModelParams& params, const PhasePointR& pt) {
  using QMatrix = Eigen::Matrix<Quad, Eigen::Dynamic, Eigen::Dynamic>;
  using QVector = Eigen::Matrix<Quad, Eigen::Dynamic, 1>;
  const int n = params.n;
  const int dim = 2 * n;
  std::vector<Quad> lam(n), th(n);
  for (int c = 0; c < n; ++c) {
    lam[c] = pt.lambda(c);
    th[c] = pt.theta(c);
  }
  const Quad mu = params.mu;
  const Quad nu = params.nu;
  const std::vector<QuadComplex> z = z_product<Quad, QuadComplex>(mu, nu, lam);

  // Hermitian A as the real symmetric [[Re, -Im], [Im, Re]]; Eigen has no
  // complex quad support, and the embedding keeps every eigenvector real.
  QMatrix embed(2 * dim, 2 * dim);
  assemble_entries<Quad, QuadComplex>(mu, nu, lam, th, z, [&](std::size_t r, std::size_t c, const QuadComplex& v) {
    const Quad re = v.real();
    const Quad im = v.imag();
    embed(r, c) = re;
    embed(dim + r, dim + c) = re;
    embed(r, dim + c) = -im;
    embed(dim + r, c) = im;
  });
  const std::vector<QuadComplex> f = f_vector<Quad, QuadComplex>(th, z);
  QVector rhs(2 * dim);
  for (int r = 0; r < dim; ++r) {
    rhs(r) = f[r].real();
    rhs(dim + r) = f[r].imag();
  }

  Eigen::SelfAdjointEigenSolver<QMatrix> eig(embed);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "quad-precision eigensolver did not converge");
  }
  const QVector& values = eig.eigenvalues();
  if (!(values(0) > 0)) {
    throw Error(ErrorCode::NotPositiveDefinite, "smallest eigenvalue " + values(0).str(6));
  }
  QVector w = eig.eigenvectors().transpose() * rhs;
  for (int k = 0; k < 2 * dim; ++k) w(k) /= boost::multiprecision::sqrt(values(k));
  const QVector v = eig.eigenvectors() * w;

  CVector out(dim);
  for (int r = 0; r < dim; ++r) out(r) = Complex(static_cast<double>(v(r)), static_cast<double>(v(dim + r)));
  return out;
}

}  // namespace bcdual::detail
