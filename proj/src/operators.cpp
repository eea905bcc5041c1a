#include "icpdps/operators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace icpdps {

LinearOp identity_op(std::size_t n) {
  LinearOp op;
  op.domain_dim = n;
  op.codomain_dim = n;
  op.apply = [](const Vec &x) { return x; };
  op.adjoint_apply = [](const Vec &y) { return y; };
  op.norm_bound = 1.0;
  return op;
}

LinearOp zero_op(std::size_t domain_dim, std::size_t codomain_dim) {
  LinearOp op;
  op.domain_dim = domain_dim;
  op.codomain_dim = codomain_dim;
  op.apply = [codomain_dim](const Vec &) { return Vec(codomain_dim, 0.0); };
  op.adjoint_apply = [domain_dim](const Vec &) { return Vec(domain_dim, 0.0); };
  op.norm_bound = 0.0;
  return op;
}

LinearOp diagonal_op(Vec d) {
  LinearOp op;
  op.domain_dim = d.size();
  op.codomain_dim = d.size();
  double mx = 0.0;
  for (double v : d) mx = std::max(mx, std::abs(v));
  op.norm_bound = mx;
  auto dd = std::make_shared<Vec>(std::move(d));
  op.apply = [dd](const Vec &x) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = (*dd)[i] * x[i];
    return r;
  };
  op.adjoint_apply = op.apply;
  return op;
}

LinearOp scaled_adjoint_op(const LinearOp &op, double alpha) {
  LinearOp r;
  r.domain_dim = op.codomain_dim;
  r.codomain_dim = op.domain_dim;
  r.norm_bound = op.norm_bound ? std::optional<double>(std::abs(alpha) * *op.norm_bound)
                               : std::nullopt;
  auto base = std::make_shared<LinearOp>(op);
  r.apply = [base, alpha](const Vec &x) {
    Vec v = base->adjoint_apply(x);
    scale(v, alpha);
    return v;
  };
  r.adjoint_apply = [base, alpha](const Vec &y) {
    Vec v = base->apply(y);
    scale(v, alpha);
    return v;
  };
  return r;
}

LinearOp stack_ops(const LinearOp &a, const LinearOp &b) {
  if (a.domain_dim != b.domain_dim)
    throw std::invalid_argument("stack_ops: domain mismatch");
  LinearOp op;
  op.domain_dim = a.domain_dim;
  op.codomain_dim = a.codomain_dim + b.codomain_dim;
  auto pa = std::make_shared<LinearOp>(a);
  auto pb = std::make_shared<LinearOp>(b);
  op.apply = [pa, pb](const Vec &x) {
    Vec ra = pa->apply(x);
    Vec rb = pb->apply(x);
    ra.insert(ra.end(), rb.begin(), rb.end());
    return ra;
  };
  op.adjoint_apply = [pa, pb](const Vec &y) {
    Vec ya(y.begin(), y.begin() + pa->codomain_dim);
    Vec yb(y.begin() + pa->codomain_dim, y.end());
    Vec r = pa->adjoint_apply(ya);
    axpy(1.0, pb->adjoint_apply(yb), r);
    return r;
  };
  if (a.norm_bound && b.norm_bound)
    op.norm_bound = std::sqrt(*a.norm_bound * *a.norm_bound + *b.norm_bound * *b.norm_bound);
  return op;
}

double estimate_norm(const LinearOp &op, int iters, std::uint64_t seed) {
  if (iters < 1) throw std::invalid_argument("estimate_norm: iters >= 1 required");
  Rng rng(seed);
  Vec v = rng.uniform_vec(op.domain_dim, -1.0, 1.0);
  double nv = norm2(v);
  if (nv == 0.0) return 0.0;
  scale(v, 1.0 / nv);
  double est = 0.0;
  for (int k = 0; k < iters; ++k) {
    Vec w = op.adjoint_apply(op.apply(v));
    double rayleigh = dot(v, w);  // = ||K v||^2 for unit v
    est = std::sqrt(std::max(rayleigh, 0.0));
    double nw = norm2(w);
    if (nw == 0.0) return 0.0;  // v in the kernel; zero operator in practice
    scale(w, 1.0 / nw);
    v = std::move(w);
  }
  return est;
}

double adjoint_residual(const LinearOp &op, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("adjoint_residual: trials >= 1 required");
  Rng rng(seed);
  double norm_est = estimate_norm(op, 50, seed ^ 0x9e3779b97f4a7c15ULL);
  const double eps = std::numeric_limits<double>::epsilon();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Vec x = rng.normal_vec(op.domain_dim);
    Vec y = rng.normal_vec(op.codomain_dim);
    double lhs = dot(op.apply(x), y);
    double rhs = dot(x, op.adjoint_apply(y));
    double denom = norm2(x) * norm2(y) * norm_est + eps;
    worst = std::max(worst, std::abs(lhs - rhs) / denom);
  }
  return worst;
}

}  // namespace icpdps
