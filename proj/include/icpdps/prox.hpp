#pragma once

#include <functional>

#include "icpdps/core.hpp"

namespace icpdps {

// Proximal map contract: evaluate(v, step) minimises f(w) + (1/2 step)||w-v||^2.
struct ProxOperator {
  std::function<Vec(const Vec &, double)> evaluate;
  double convexity_factor = 0.0;

  Vec operator()(const Vec &v, double step) const { return evaluate(v, step); }
};

// prox of tau/2 ||z - w||^2 at v: (v + tau z)/(1 + tau) componentwise
Vec prox_quadratic_identity(const Vec &v, double tau, const Vec &z);

// prox of tau/2 ||z - S F w||^2 at v, diagonalised by the unitary 2-D DFT.
// mask: n1*n2 zero/one entries, Hermitian-symmetric; z_freq: interleaved
// (re, im) spectrum, 2*n1*n2 entries, zero outside the mask.
Vec prox_quadratic_fourier(const Vec &v, double tau, const Vec &mask, const Vec &z_freq,
                           std::size_t n1, std::size_t n2);

// projection of a 2-channel-per-pixel field onto the per-pixel beta-ball.
// Layout: y[2p] and y[2p+1] are the two channels of pixel p.
Vec project_dual_ball21(const Vec &y, double beta);

Vec project_box(const Vec &x, double lo, double hi);

// prox of sigma * sum_j g_j^* at phi, where
// g_j^*(t) = -b_j + c_j(1-t) + b_j log(b_j/(1-t)) on t < 1.
Vec prox_kl_conjugate(const Vec &phi, double sigma, const Vec &b, const Vec &c);

double kl_conjugate_value(double phi, double b, double c);

}  // namespace icpdps
