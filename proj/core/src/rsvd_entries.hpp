#pragma once

#include <cstddef>
#include <vector>

// Entry formulas of z_a, A and F, written once for any real type R and a
// matching complex type Z. The double path uses std::complex<double>; the
// orbit vector is evaluated again in quad precision.
namespace bcdual::detail {

template <class R, class Z>
std::vector<Z> z_product(R mu, R nu, const std::vector<R>& lam) {
  const std::size_t n = lam.size();
  const Z i(R(0), R(1));
  const Z two_i_mu = Z(R(2) * mu) * i;
  std::vector<Z> z(n);
  for (std::size_t a = 0; a < n; ++a) {
    Z prod = -(Z(R(1)) + i * Z(nu / lam[a]));
    for (std::size_t d = 0; d < n; ++d) {
      if (d == a) continue;
      prod *= (Z(R(1)) + two_i_mu / Z(lam[a] - lam[d])) * (Z(R(1)) + two_i_mu / Z(lam[a] + lam[d]));
    }
    z[a] = prod;
  }
  return z;
}

// Calls set(row, col, value) for every entry of the 2n x 2n matrix A.
template <class R, class Z, class Set>
void assemble_entries(R mu, R nu, const std::vector<R>& lam, const std::vector<R>& th, const std::vector<Z>& z,
                      Set&& set) {
  using std::abs;
  using std::conj;
  using std::exp;
  using std::sqrt;
  const std::size_t n = lam.size();
  const Z i(R(0), R(1));
  const Z two_i_mu = Z(R(2) * mu) * i;
  std::vector<R> absz(n);
  for (std::size_t a = 0; a < n; ++a) absz[a] = abs(z[a]);

  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const R root = sqrt(absz[r] * absz[c]);
      set(r, c, Z(exp(th[r] + th[c]) * root) * two_i_mu / (two_i_mu + Z(lam[r] - lam[c])));
      set(n + r, n + c,
          Z(exp(-th[r] - th[c]) / root) * conj(z[r]) * z[c] * two_i_mu / (two_i_mu - Z(lam[r] - lam[c])));
      Z off = Z(exp(th[r] - th[c]) * sqrt(absz[r] / absz[c])) * z[c] * two_i_mu / (two_i_mu + Z(lam[r] + lam[c]));
      if (r == c) off += i * Z(mu - nu) / (i * Z(mu) + Z(lam[r]));
      set(r, n + c, off);
      set(n + c, r, conj(off));
    }
  }
}

template <class R, class Z>
std::vector<Z> f_vector(const std::vector<R>& th, const std::vector<Z>& z) {
  using std::abs;
  using std::conj;
  using std::exp;
  using std::sqrt;
  const std::size_t n = th.size();
  std::vector<Z> f(2 * n);
  for (std::size_t a = 0; a < n; ++a) {
    const R root = sqrt(R(abs(z[a])));
    f[a] = Z(exp(th[a]) * root);
    f[n + a] = Z(exp(-th[a]) / root) * conj(z[a]);
  }
  return f;
}

}  // namespace bcdual::detail
