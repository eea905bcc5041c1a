#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace icpdps {

using Vec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double dot(const Vec &a, const Vec &b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dot: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2sq(const Vec &a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

inline double norm2(const Vec &a) { return std::sqrt(norm2sq(a)); }

// y += alpha * x
inline void axpy(double alpha, const Vec &x, Vec &y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(Vec &x, double alpha) {
  for (double &v : x) v *= alpha;
}

inline Vec operator-(const Vec &a, const Vec &b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec sub: dimension mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec operator+(const Vec &a, const Vec &b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec add: dimension mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec operator*(double alpha, const Vec &a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = alpha * a[i];
  return r;
}

inline bool all_finite(const Vec &a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

struct PrimalDualPoint {
  Vec x;  // primal
  Vec y;  // dual
};

// Deterministic seeded random source. Gaussian sampling uses the Box-Muller
// transform so the exact stream does not depend on the standard library's
// normal_distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    // 53-bit uniform in [0,1)
    return (gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * M_PI * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

  // Knuth's product-of-uniforms method, split multiplicatively for large
  // means to keep the loop count bounded.
  std::uint64_t poisson(double mean) {
    if (mean < 0.0) throw std::invalid_argument("poisson: negative rate");
    if (mean == 0.0) return 0;
    std::uint64_t count = 0;
    while (mean > 500.0) {
      // Poisson(m) = Poisson(500) + Poisson(m-500), independent
      count += poisson_small(500.0);
      mean -= 500.0;
    }
    return count + poisson_small(mean);
  }

  Vec normal_vec(std::size_t n) {
    Vec v(n);
    for (double &x : v) x = normal();
    return v;
  }

  Vec uniform_vec(std::size_t n, double lo = 0.0, double hi = 1.0) {
    Vec v(n);
    for (double &x : v) x = uniform(lo, hi);
    return v;
  }

 private:
  std::uint64_t poisson_small(double mean) {
    const double limit = std::exp(-mean);
    double prod = 1.0;
    std::uint64_t k = 0;
    do {
      prod *= uniform();
      ++k;
    } while (prod > limit);
    return k - 1;
  }

  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace icpdps
