#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/QR>

#include "bcdual/model.hpp"

namespace bcdual::test {

inline CMatrix random_complex(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, int dim) {
  const CMatrix x = random_complex(rng, dim, dim);
  return x + x.adjoint();
}

inline CMatrix random_unitary(std::mt19937_64& rng, int dim) {
  Eigen::HouseholderQR<CMatrix> qr(random_complex(rng, dim, dim));
  return qr.householderQ() * CMatrix::Identity(dim, dim);
}

// [[A, B], [-B, -A]] with A Hermitian and B anti-Hermitian: C M C = -M.
inline CMatrix random_anti_paired(std::mt19937_64& rng, int n) {
  const CMatrix a = random_hermitian(rng, n);
  const CMatrix x = random_complex(rng, n, n);
  const CMatrix b = x - x.adjoint();
  CMatrix m(2 * n, 2 * n);
  m << a, b, -b, -a;
  return m;
}

inline double max_abs(const RVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

inline double rel(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

inline RVector sorted_desc(RVector v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

inline PhasePointS point_s(std::initializer_list<double> q, std::initializer_list<double> p) {
  PhasePointS pt;
  pt.q = Eigen::Map<const RVector>(q.begin(), static_cast<Eigen::Index>(q.size()));
  pt.p = Eigen::Map<const RVector>(p.begin(), static_cast<Eigen::Index>(p.size()));
  return pt;
}

inline PhasePointR point_r(std::initializer_list<double> lambda, std::initializer_list<double> theta) {
  PhasePointR pt;
  pt.lambda = Eigen::Map<const RVector>(lambda.begin(), static_cast<Eigen::Index>(lambda.size()));
  pt.theta = Eigen::Map<const RVector>(theta.begin(), static_cast<Eigen::Index>(theta.size()));
  return pt;
}

inline bool in_chamber(const RVector& x) {
  return model::chamber_check(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

inline ModelParams params(double mu, double nu, double kappa, int n) { return ModelParams{mu, nu, kappa, n}; }

}  // namespace bcdual::test
