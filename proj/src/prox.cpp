#include "icpdps/prox.hpp"

#include <cmath>

#include "icpdps/transforms.hpp"

namespace icpdps {

Vec prox_quadratic_identity(const Vec &v, double tau, const Vec &z) {
  if (v.size() != z.size()) throw std::invalid_argument("prox_quadratic_identity: dim mismatch");
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = (v[i] + tau * z[i]) / (1.0 + tau);
  return r;
}

Vec prox_quadratic_fourier(const Vec &v, double tau, const Vec &mask, const Vec &z_freq,
                           std::size_t n1, std::size_t n2) {
  const std::size_t n = n1 * n2;
  if (v.size() != n || mask.size() != n || z_freq.size() != 2 * n)
    throw std::invalid_argument("prox_quadratic_fourier: dim mismatch");
  if (!mask_is_hermitian(mask, n1, n2))
    throw std::invalid_argument("prox_quadratic_fourier: mask not Hermitian-symmetric");
  Vec vf = dft2_apply(v, n1, n2);
  for (std::size_t k = 0; k < n; ++k) {
    const double m = mask[k];
    const double d = 1.0 + tau * m;
    vf[2 * k] = (vf[2 * k] + tau * m * z_freq[2 * k]) / d;
    vf[2 * k + 1] = (vf[2 * k + 1] + tau * m * z_freq[2 * k + 1]) / d;
  }
  return dft2_adjoint_real(vf, n1, n2);
}

Vec project_dual_ball21(const Vec &y, double beta) {
  if (y.size() % 2 != 0) throw std::invalid_argument("project_dual_ball21: odd length");
  Vec r(y.size());
  for (std::size_t p = 0; p < y.size() / 2; ++p) {
    const double a = y[2 * p], b = y[2 * p + 1];
    const double nrm = std::sqrt(a * a + b * b);
    const double s = beta / std::max(beta, nrm);
    r[2 * p] = s * a;
    r[2 * p + 1] = s * b;
  }
  return r;
}

Vec project_box(const Vec &x, double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("project_box: lo > hi");
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::min(hi, std::max(lo, x[i]));
  return r;
}

double kl_conjugate_value(double phi, double b, double c) {
  if (phi >= 1.0) return kInf;
  return -b + c * (1.0 - phi) + b * std::log(b / (1.0 - phi));
}

Vec prox_kl_conjugate(const Vec &phi, double sigma, const Vec &b, const Vec &c) {
  if (phi.size() != b.size() || phi.size() != c.size())
    throw std::invalid_argument("prox_kl_conjugate: dim mismatch");
  Vec r(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    if (b[j] <= 0.0 || c[j] <= 0.0)
      throw std::invalid_argument("prox_kl_conjugate: b, c must be positive");
    // Stationarity of sigma g*(1-t) + (1/2)(1-t-phi)^2 in t = 1-phi' gives
    // t^2 - (1-phi-sigma c) t - sigma b = 0; the positive root keeps phi' < 1.
    const double h = 1.0 - phi[j] - sigma * c[j];
    const double t = 0.5 * (h + std::sqrt(h * h + 4.0 * sigma * b[j]));
    r[j] = 1.0 - t;
  }
  return r;
}

}  // namespace icpdps
