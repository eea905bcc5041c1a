#pragma once

#include <cstdint>

#include "icpdps/core.hpp"
#include "icpdps/operators.hpp"
#include "icpdps/prox.hpp"
#include "icpdps/transforms.hpp"

namespace icpdps {

// A saddle-point instance min_x max_y G(x) + <Kx,y> - F*(y) together with the
// evaluators needed for gap computation. Evaluators return kInf for
// infeasible points. Built specs are immutable and shareable.
struct ProblemSpec {
  LinearOp K;
  ProxOperator prox_G;
  ProxOperator prox_Fstar;
  double gamma = 0.0;  // strong convexity of G
  double rho = 0.0;    // strong convexity of F*
  std::function<double(const Vec &)> eval_G;
  std::function<double(const Vec &)> eval_F_of_K;  // F(Kx) as a function of x
  std::function<double(const Vec &)> eval_Gstar;
  std::function<double(const Vec &)> eval_Fstar;
  std::size_t primal_dim = 0;
  std::size_t dual_dim = 0;
};

struct PetData {
  Vec b;  // measured counts plus background, strictly positive
  Vec c;  // background, strictly positive
  LinearOp T;
  std::size_t n1 = 0, n2 = 0;
};

// sum over pixels of the 2-norm of the 2-channel field
double norm21(const Vec &g);

// 1/2 ||z - x||^2 + beta ||Dx||_{2,1}; gamma = 1.
ProblemSpec make_denoise_problem(const Vec &z, std::size_t n1, std::size_t n2, double beta);

// 1/2 ||z_freq - S F x||^2 + beta ||Dx||_{2,1} with S the mask subsampler.
// z_freq is an interleaved spectrum, zero off the mask. gamma = 0.
ProblemSpec make_fourier_problem(const Vec &z_freq, const Vec &mask, std::size_t n1,
                                 std::size_t n2, double beta);

// naive reconstruction F* S* z, the zero-filling inversion diagnostic
Vec zero_filling_image(const Vec &z_freq, const Vec &mask, std::size_t n1, std::size_t n2);

// box-constrained KL fidelity plus TV; dual blocks [phi (k) | y (2 n1 n2)].
ProblemSpec make_pet_problem(const PetData &data, double beta);

}  // namespace icpdps
