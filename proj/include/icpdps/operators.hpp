#pragma once

#include <functional>
#include <optional>

#include "icpdps/core.hpp"

namespace icpdps {

// Forward/adjoint application contract for a bounded linear operator.
// Handles are immutable after construction and safe to share across threads.
struct LinearOp {
  std::size_t domain_dim = 0;
  std::size_t codomain_dim = 0;
  std::function<Vec(const Vec &)> apply;
  std::function<Vec(const Vec &)> adjoint_apply;
  std::optional<double> norm_bound;  // analytic bound on the operator norm, if known

  Vec operator()(const Vec &x) const { return apply(x); }
  Vec adjoint(const Vec &y) const { return adjoint_apply(y); }
};

LinearOp identity_op(std::size_t n);
LinearOp zero_op(std::size_t domain_dim, std::size_t codomain_dim);
LinearOp diagonal_op(Vec d);
LinearOp scaled_adjoint_op(const LinearOp &op, double alpha);  // alpha * K^*

// Stack two operators sharing a domain: x -> [a(x); b(x)].
LinearOp stack_ops(const LinearOp &a, const LinearOp &b);

// Power iteration estimate of ||op|| = sqrt(largest eigenvalue of K^*K),
// Rayleigh-quotient output, seeded uniform random start.
double estimate_norm(const LinearOp &op, int iters = 100, std::uint64_t seed = 1);

// max over trials of |<Kx,y> - <x,K*y>| / (||x|| ||y|| ||K||_est + eps)
double adjoint_residual(const LinearOp &op, int trials = 20, std::uint64_t seed = 1);

}  // namespace icpdps
