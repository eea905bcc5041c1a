#pragma once

#include "icpdps/problems.hpp"
#include "icpdps/schedules.hpp"

namespace icpdps {

// (G(x) + <y*, Kx> - F*(y*)) - (G(x*) + <y, Kx*> - F(y)); kInf when any
// evaluator is infinite at the needed points.
double lagrangian_gap(const PrimalDualPoint &u, const PrimalDualPoint &u_star,
                      const ProblemSpec &p);

// Lagrangian gap of the strong-convexity shifted functions:
// lagrangian - gamma/2 ||x - x*||^2 - rho/2 ||y - y*||^2.
double adjusted_gap(const PrimalDualPoint &u, const PrimalDualPoint &u_star,
                    const ProblemSpec &p);

// G(x) + F(Kx) + G*(-K^* y) + F*(y); computable without u*, may be kInf.
double true_gap(const PrimalDualPoint &u, const ProblemSpec &p);

// Initial certificate constant:
//   C0 = 1/2 Q(x0 - x*, y0 - y*) + phi0 tau0 <w0 - K x*, y0 - y*>
// with Q(xi, up) = lambda0^2 phi0 ||xi||^2 + mu1^2 psi1 ||up||^2
//                  - 2 lambda0 phi0 tau0 <K xi, up>
// and w0 = rho (y* - y0), the minimal-norm shifted-subgradient choice at y0.
double compute_C0(const PrimalDualPoint &u0, const PrimalDualPoint &u_star,
                  const StepState &step0, const ProblemSpec &p);

// Descent-estimate left side after N steps:
//   delta phi_N lambda_N^2 / 2 ||zeta - x*||^2
//   + delta psi_{N+1} lambda_{N+1}^2 / 2 ||eta - y*||^2
//   + phi_{N-1} tau_{N-1} adjusted_gap(u)
// state_N carries (phi_N, lambda_N, psi_{N+1}, mu = lambda_{N+1});
// state_prev carries (phi_{N-1}, tau_{N-1}).
double certificate_lhs(double delta, const StepState &state_N, const StepState &state_prev,
                       const Vec &zeta, const Vec &eta, const PrimalDualPoint &u,
                       const PrimalDualPoint &u_star, const ProblemSpec &p);

// target_db = 10 log10(||x - x*||^2 / ||x*||^2), gap_db = 10 log10(gap^2/gap0^2),
// both floored at -300 dB. Throws if gap0 is not positive.
struct DbMetrics {
  double target_db;
  double gap_db;
};
DbMetrics db_metrics(const Vec &x, const Vec &x_star, double gap0, double gap);

double db_floor(double ratio_db);  // applies the -300 dB floor to a raw dB value

}  // namespace icpdps
