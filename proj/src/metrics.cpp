#include "icpdps/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace icpdps {

namespace {
constexpr double kDbFloor = -300.0;

bool finite(double v) { return std::isfinite(v); }
}  // namespace

double lagrangian_gap(const PrimalDualPoint &u, const PrimalDualPoint &u_star,
                      const ProblemSpec &p) {
  const double gx = p.eval_G(u.x);
  const double gxs = p.eval_G(u_star.x);
  const double fy = p.eval_Fstar(u.y);
  const double fys = p.eval_Fstar(u_star.y);
  if (!finite(gx) || !finite(gxs) || !finite(fy) || !finite(fys)) return kInf;
  const double lhs = gx + dot(u_star.y, p.K(u.x)) - fys;
  const double rhs = gxs + dot(u.y, p.K(u_star.x)) - fy;
  return lhs - rhs;
}

double adjusted_gap(const PrimalDualPoint &u, const PrimalDualPoint &u_star,
                    const ProblemSpec &p) {
  const double lg = lagrangian_gap(u, u_star, p);
  if (!finite(lg)) return lg;
  double shift = 0.0;
  if (p.gamma > 0.0) shift += 0.5 * p.gamma * norm2sq(u.x - u_star.x);
  if (p.rho > 0.0) shift += 0.5 * p.rho * norm2sq(u.y - u_star.y);
  return lg - shift;
}

double true_gap(const PrimalDualPoint &u, const ProblemSpec &p) {
  if (!p.eval_F_of_K || !p.eval_Gstar)
    throw std::invalid_argument("true_gap: composite evaluators unavailable");
  const double a = p.eval_G(u.x);
  if (!finite(a)) return kInf;
  const double b = p.eval_F_of_K(u.x);
  if (!finite(b)) return kInf;
  const double c = p.eval_Gstar(-1.0 * p.K.adjoint(u.y));
  if (!finite(c)) return kInf;
  const double d = p.eval_Fstar(u.y);
  if (!finite(d)) return kInf;
  return a + b + c + d;
}

double compute_C0(const PrimalDualPoint &u0, const PrimalDualPoint &u_star,
                  const StepState &step0, const ProblemSpec &p) {
  const Vec xi = u0.x - u_star.x;
  const Vec up = u0.y - u_star.y;
  const double phi0 = step0.phi();
  const double psi1 = step0.psi();
  const double l0 = step0.lambda, m1 = step0.mu, tau0 = step0.tau;
  const double Q = l0 * l0 * phi0 * norm2sq(xi) + m1 * m1 * psi1 * norm2sq(up) -
                   2.0 * l0 * phi0 * tau0 * dot(p.K(xi), up);
  Vec w0_minus_Kxs = -1.0 * p.K(u_star.x);
  if (p.rho > 0.0) axpy(p.rho, u_star.y - u0.y, w0_minus_Kxs);
  // psi0 sigma0 = phi0 tau0 through the alignment condition
  return 0.5 * Q + phi0 * tau0 * dot(w0_minus_Kxs, up);
}

double certificate_lhs(double delta, const StepState &state_N, const StepState &state_prev,
                       const Vec &zeta, const Vec &eta, const PrimalDualPoint &u,
                       const PrimalDualPoint &u_star, const ProblemSpec &p) {
  const double primal = 0.5 * delta * state_N.phi() * state_N.lambda * state_N.lambda *
                        norm2sq(zeta - u_star.x);
  const double dual =
      0.5 * delta * state_N.psi() * state_N.mu * state_N.mu * norm2sq(eta - u_star.y);
  const double gap_term = state_prev.phi() * state_prev.tau * adjusted_gap(u, u_star, p);
  return primal + dual + gap_term;
}

double db_floor(double ratio_db) {
  if (!std::isfinite(ratio_db) || ratio_db < kDbFloor) return kDbFloor;
  return ratio_db;
}

DbMetrics db_metrics(const Vec &x, const Vec &x_star, double gap0, double gap) {
  if (!(gap0 > 0.0)) throw std::invalid_argument("db_metrics: gap0 must be positive");
  const double denom = norm2sq(x_star);
  DbMetrics m;
  m.target_db = db_floor(10.0 * std::log10(norm2sq(x - x_star) / denom));
  // an infinite gap (infeasible iterate) is no reduction at all, not the floor
  m.gap_db = std::isfinite(gap) ? db_floor(10.0 * std::log10((gap * gap) / (gap0 * gap0))) : 0.0;
  return m;
}

}  // namespace icpdps
