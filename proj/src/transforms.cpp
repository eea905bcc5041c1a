#include "icpdps/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

namespace icpdps {

namespace {

// FFTW plan cache keyed by (n1, n2, sign). Plans are created with
// FFTW_ESTIMATE so the transform result is deterministic.
struct PlanCache {
  std::mutex mu;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans;

  fftw_plan get(std::size_t n1, std::size_t n2, int sign, fftw_complex *in, fftw_complex *out) {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(n1, n2, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    fftw_plan p = fftw_plan_dft_2d(static_cast<int>(n1), static_cast<int>(n2), in, out, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans[key] = p;
    return p;
  }
};

PlanCache &cache() {
  static PlanCache c;
  return c;
}

Vec dft2_run(const Vec &interleaved, std::size_t n1, std::size_t n2, int sign) {
  const std::size_t n = n1 * n2;
  if (interleaved.size() != 2 * n) throw std::invalid_argument("dft2: bad input size");
  std::vector<fftw_complex> in(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    in[i][0] = interleaved[2 * i];
    in[i][1] = interleaved[2 * i + 1];
  }
  fftw_plan p = cache().get(n1, n2, sign, in.data(), out.data());
  fftw_execute_dft(p, in.data(), out.data());
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  Vec r(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    r[2 * i] = s * out[i][0];
    r[2 * i + 1] = s * out[i][1];
  }
  return r;
}

}  // namespace

Vec dft2_apply(const Vec &img, std::size_t n1, std::size_t n2) {
  const std::size_t n = n1 * n2;
  if (img.size() != n) throw std::invalid_argument("dft2_apply: bad image size");
  Vec c(2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) c[2 * i] = img[i];
  return dft2_run(c, n1, n2, FFTW_FORWARD);
}

Vec dft2_apply_c(const Vec &freq, std::size_t n1, std::size_t n2) {
  return dft2_run(freq, n1, n2, FFTW_FORWARD);
}

Vec dft2_adjoint(const Vec &freq, std::size_t n1, std::size_t n2) {
  return dft2_run(freq, n1, n2, FFTW_BACKWARD);
}

Vec dft2_adjoint_real(const Vec &freq, std::size_t n1, std::size_t n2, double *imag_max) {
  Vec c = dft2_adjoint(freq, n1, n2);
  const std::size_t n = n1 * n2;
  Vec r(n);
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = c[2 * i];
    im = std::max(im, std::abs(c[2 * i + 1]));
  }
  if (imag_max) *imag_max = im;
  return r;
}

LinearOp grad_op(std::size_t n1, std::size_t n2) {
  LinearOp op;
  const std::size_t n = n1 * n2;
  op.domain_dim = n;
  op.codomain_dim = 2 * n;
  op.norm_bound = std::sqrt(8.0);
  op.apply = [n1, n2, n](const Vec &x) {
    if (x.size() != n) throw std::invalid_argument("grad: bad size");
    Vec g(2 * n, 0.0);
    for (std::size_t r = 0; r < n1; ++r)
      for (std::size_t c = 0; c < n2; ++c) {
        const std::size_t p = r * n2 + c;
        if (r + 1 < n1) g[2 * p] = x[p + n2] - x[p];
        if (c + 1 < n2) g[2 * p + 1] = x[p + 1] - x[p];
      }
    return g;
  };
  // negative divergence with matching Neumann boundary handling
  op.adjoint_apply = [n1, n2, n](const Vec &g) {
    if (g.size() != 2 * n) throw std::invalid_argument("grad adjoint: bad size");
    Vec x(n, 0.0);
    for (std::size_t r = 0; r < n1; ++r)
      for (std::size_t c = 0; c < n2; ++c) {
        const std::size_t p = r * n2 + c;
        if (r + 1 < n1) {
          x[p] -= g[2 * p];
          x[p + n2] += g[2 * p];
        }
        if (c + 1 < n2) {
          x[p] -= g[2 * p + 1];
          x[p + 1] += g[2 * p + 1];
        }
      }
    return x;
  };
  return op;
}

LinearOp radon4_op(std::size_t n1, std::size_t n2) {
  LinearOp op;
  const std::size_t n = n1 * n2;
  const std::size_t ndiag = n1 + n2 - 1;
  op.domain_dim = n;
  op.codomain_dim = n1 + n2 + 2 * ndiag;
  op.apply = [n1, n2, n, ndiag](const Vec &x) {
    if (x.size() != n) throw std::invalid_argument("radon4: bad size");
    Vec m(n1 + n2 + 2 * ndiag, 0.0);
    for (std::size_t r = 0; r < n1; ++r)
      for (std::size_t c = 0; c < n2; ++c) {
        const double v = x[r * n2 + c];
        m[r] += v;                                    // row sums
        m[n1 + c] += v;                               // column sums
        m[n1 + n2 + (r - c + n2 - 1)] += v;           // main diagonal direction (r-c const)
        m[n1 + n2 + ndiag + (r + c)] += v;            // anti-diagonal direction (r+c const)
      }
    return m;
  };
  op.adjoint_apply = [n1, n2, n, ndiag](const Vec &m) {
    if (m.size() != n1 + n2 + 2 * ndiag) throw std::invalid_argument("radon4 adjoint: bad size");
    Vec x(n, 0.0);
    for (std::size_t r = 0; r < n1; ++r)
      for (std::size_t c = 0; c < n2; ++c)
        x[r * n2 + c] = m[r] + m[n1 + c] + m[n1 + n2 + (r - c + n2 - 1)] +
                        m[n1 + n2 + ndiag + (r + c)];
    return x;
  };
  return op;
}

Vec spiral_mask(std::size_t n1, std::size_t n2, double turns, double thickness,
                double center_fill_radius) {
  if (turns <= 0.0 || thickness <= 0.0 || center_fill_radius <= 0.0)
    throw std::invalid_argument("spiral_mask: positive parameters required");
  Vec mask(n1 * n2, 0.0);
  const double c1 = n1 / 2.0, c2 = n2 / 2.0;
  const double rmax = std::sqrt(c1 * c1 + c2 * c2);
  const double a = rmax / (2.0 * M_PI * turns);  // r = a * theta
  for (std::size_t r = 0; r < n1; ++r)
    for (std::size_t c = 0; c < n2; ++c) {
      // centered frequency coordinates of (r, c) under fftshift convention
      double dy = static_cast<double>(r) - c1;
      double dx = static_cast<double>(c) - c2;
      double rad = std::sqrt(dx * dx + dy * dy);
      bool sel = rad <= center_fill_radius;
      if (!sel) {
        double th = std::atan2(dy, dx);
        // distance to the nearest spiral arm r = a (th + 2 pi k)
        double k = std::floor((rad / a - th) / (2.0 * M_PI));
        for (int d = 0; d <= 1 && !sel; ++d) {
          double rs = a * (th + 2.0 * M_PI * (k + d));
          if (rs >= 0.0 && std::abs(rad - rs) <= thickness) sel = true;
        }
      }
      if (sel) mask[r * n2 + c] = 1.0;
    }
  // shift back so entry (0,0) is the DC frequency
  Vec shifted(n1 * n2, 0.0);
  const std::size_t s1 = n1 / 2, s2 = n2 / 2;
  for (std::size_t r = 0; r < n1; ++r)
    for (std::size_t c = 0; c < n2; ++c)
      shifted[((r + s1) % n1) * n2 + (c + s2) % n2] = mask[r * n2 + c];
  shifted[0] = 1.0;
  // Hermitian symmetrisation: close under frequency negation
  for (std::size_t r = 0; r < n1; ++r)
    for (std::size_t c = 0; c < n2; ++c)
      if (shifted[r * n2 + c] == 1.0) shifted[((n1 - r) % n1) * n2 + (n2 - c) % n2] = 1.0;
  return shifted;
}

double mask_selected_fraction(const Vec &mask) {
  double s = 0.0;
  for (double v : mask) s += (v != 0.0) ? 1.0 : 0.0;
  return mask.empty() ? 0.0 : s / static_cast<double>(mask.size());
}

bool mask_is_hermitian(const Vec &mask, std::size_t n1, std::size_t n2) {
  for (std::size_t r = 0; r < n1; ++r)
    for (std::size_t c = 0; c < n2; ++c)
      if ((mask[r * n2 + c] != 0.0) != (mask[((n1 - r) % n1) * n2 + (n2 - c) % n2] != 0.0))
        return false;
  return true;
}

}  // namespace icpdps
