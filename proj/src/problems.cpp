#include "icpdps/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace icpdps {

double norm21(const Vec &g) {
  double s = 0.0;
  for (std::size_t p = 0; p + 1 < g.size(); p += 2) s += std::hypot(g[p], g[p + 1]);
  return s;
}

namespace {

// feasibility slack for indicator evaluators; iterates produced by exact
// projections sit on the boundary up to rounding
constexpr double kFeasTol = 1e-9;

double ball21_indicator(const Vec &y, double beta) {
  for (std::size_t p = 0; p + 1 < y.size(); p += 2)
    if (std::hypot(y[p], y[p + 1]) > beta * (1.0 + kFeasTol) + kFeasTol) return kInf;
  return 0.0;
}

}  // namespace

ProblemSpec make_denoise_problem(const Vec &z, std::size_t n1, std::size_t n2, double beta) {
  if (beta <= 0.0) throw std::invalid_argument("make_denoise_problem: beta > 0 required");
  if (z.size() != n1 * n2) throw std::invalid_argument("make_denoise_problem: dims");
  ProblemSpec p;
  p.K = grad_op(n1, n2);
  p.primal_dim = n1 * n2;
  p.dual_dim = 2 * n1 * n2;
  p.gamma = 1.0;
  p.rho = 0.0;
  p.prox_G.evaluate = [z](const Vec &v, double tau) { return prox_quadratic_identity(v, tau, z); };
  p.prox_G.convexity_factor = 1.0;
  p.prox_Fstar.evaluate = [beta](const Vec &y, double) { return project_dual_ball21(y, beta); };
  p.eval_G = [z](const Vec &x) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - z[k]) * (x[k] - z[k]);
    return 0.5 * s;
  };
  const LinearOp D = p.K;
  p.eval_F_of_K = [D, beta](const Vec &x) { return beta * norm21(D(x)); };
  p.eval_Gstar = [z](const Vec &w) { return 0.5 * norm2sq(w) + dot(w, z); };
  p.eval_Fstar = [beta](const Vec &y) { return ball21_indicator(y, beta); };
  return p;
}

ProblemSpec make_fourier_problem(const Vec &z_freq, const Vec &mask, std::size_t n1,
                                 std::size_t n2, double beta) {
  const std::size_t n = n1 * n2;
  if (mask.size() != n || z_freq.size() != 2 * n)
    throw std::invalid_argument("make_fourier_problem: dims");
  if (!mask_is_hermitian(mask, n1, n2))
    throw std::invalid_argument("make_fourier_problem: mask must be Hermitian-symmetric");
  ProblemSpec p;
  p.K = grad_op(n1, n2);
  p.primal_dim = n;
  p.dual_dim = 2 * n;
  p.gamma = 0.0;  // only strongly convex on the sampled subspace
  p.rho = 0.0;
  p.prox_G.evaluate = [mask, z_freq, n1, n2](const Vec &v, double tau) {
    return prox_quadratic_fourier(v, tau, mask, z_freq, n1, n2);
  };
  p.prox_Fstar.evaluate = [beta](const Vec &y, double) { return project_dual_ball21(y, beta); };
  p.eval_G = [mask, z_freq, n1, n2, n](const Vec &x) {
    const Vec xf = dft2_apply(x, n1, n2);
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask[k] == 0.0) continue;
      const double dr = xf[2 * k] - z_freq[2 * k];
      const double di = xf[2 * k + 1] - z_freq[2 * k + 1];
      s += dr * dr + di * di;
    }
    return 0.5 * s;
  };
  const LinearOp D = p.K;
  p.eval_F_of_K = [D, beta](const Vec &x) { return beta * norm21(D(x)); };
  // conjugate of x -> 1/2||SFx - z||^2: finite only when Fw vanishes off the
  // mask, value 1/2||Fw||^2 + Re<Fw, z> on the sampled frequencies
  p.eval_Gstar = [mask, z_freq, n1, n2, n](const Vec &w) {
    const Vec wf = dft2_apply(w, n1, n2);
    double off = 0.0, s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double e = wf[2 * k] * wf[2 * k] + wf[2 * k + 1] * wf[2 * k + 1];
      if (mask[k] == 0.0) {
        off += e;
      } else {
        s += 0.5 * e + wf[2 * k] * z_freq[2 * k] + wf[2 * k + 1] * z_freq[2 * k + 1];
      }
    }
    if (off > kFeasTol * kFeasTol * (1.0 + norm2sq(w))) return kInf;
    return s;
  };
  p.eval_Fstar = [beta](const Vec &y) { return ball21_indicator(y, beta); };
  return p;
}

Vec zero_filling_image(const Vec &z_freq, const Vec &mask, std::size_t n1, std::size_t n2) {
  Vec zf = z_freq;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (mask[k] == 0.0) zf[2 * k] = zf[2 * k + 1] = 0.0;
  }
  return dft2_adjoint_real(zf, n1, n2);
}

ProblemSpec make_pet_problem(const PetData &data, double beta) {
  const std::size_t n = data.n1 * data.n2;
  const std::size_t k_meas = data.T.codomain_dim;
  if (data.b.size() != k_meas || data.c.size() != k_meas || data.T.domain_dim != n)
    throw std::invalid_argument("make_pet_problem: dims");
  for (std::size_t j = 0; j < k_meas; ++j)
    if (data.b[j] <= 0.0 || data.c[j] <= 0.0)
      throw std::invalid_argument("make_pet_problem: b, c must be positive");
  ProblemSpec p;
  const LinearOp D = grad_op(data.n1, data.n2);
  p.K = stack_ops(data.T, D);
  p.primal_dim = n;
  p.dual_dim = k_meas + 2 * n;
  p.gamma = 0.0;
  p.rho = 0.0;
  p.prox_G.evaluate = [](const Vec &v, double) { return project_box(v, 0.0, 1.0); };
  const Vec b = data.b, c = data.c;
  p.prox_Fstar.evaluate = [b, c, k_meas, beta](const Vec &y, double sigma) {
    Vec phi(y.begin(), y.begin() + k_meas);
    Vec tail(y.begin() + k_meas, y.end());
    Vec out = prox_kl_conjugate(phi, sigma, b, c);
    Vec ytail = project_dual_ball21(tail, beta);
    out.insert(out.end(), ytail.begin(), ytail.end());
    return out;
  };
  p.eval_G = [](const Vec &x) {
    for (double v : x)
      if (v < -kFeasTol || v > 1.0 + kFeasTol) return kInf;
    return 0.0;
  };
  const LinearOp T = data.T;
  p.eval_F_of_K = [T, D, b, c, beta](const Vec &x) {
    const Vec tx = T(x);
    double s = 0.0;
    for (std::size_t j = 0; j < tx.size(); ++j) {
      const double t = tx[j] + c[j];
      if (t <= 0.0) return kInf;
      s += tx[j] - b[j] * std::log(t);
    }
    return s + beta * norm21(D(x));
  };
  // support function of the box [0,1]^n: sup_{x in box} <w,x> = sum_j max(w_j, 0),
  // each coordinate picking x_j = 1 when w_j > 0 and x_j = 0 otherwise
  p.eval_Gstar = [](const Vec &w) {
    double s = 0.0;
    for (double v : w) s += std::max(v, 0.0);
    return s;
  };
  p.eval_Fstar = [b, c, k_meas, beta](const Vec &y) {
    double s = 0.0;
    for (std::size_t j = 0; j < k_meas; ++j) {
      const double g = kl_conjugate_value(y[j], b[j], c[j]);
      if (g == kInf) return kInf;
      s += g;
    }
    Vec tail(y.begin() + k_meas, y.end());
    const double ind = ball21_indicator(tail, beta);
    return ind == kInf ? kInf : s;
  };
  return p;
}

}  // namespace icpdps
