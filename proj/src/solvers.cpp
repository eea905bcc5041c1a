#include "icpdps/solvers.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace icpdps {

namespace {

// one pass of the plain splitting iteration based at (x, y)
PrimalDualPoint pdps_pass(const ProblemSpec &p, const Vec &x, const Vec &y, double tau,
                          double sigma, double omega) {
  Vec x_new = p.prox_G(x - tau * p.K.adjoint(y), tau);
  Vec x_ext = x_new + omega * (x_new - x);
  Vec y_new = p.prox_Fstar(y + sigma * p.K(x_ext), sigma);
  return {std::move(x_new), std::move(y_new)};
}

}  // namespace

ConstantSchedule::ConstantSchedule(double tau, double sigma, double norm_K) {
  s_.i = 0;
  s_.tau = tau;
  s_.sigma = sigma;
  s_.lambda = 1.0;
  s_.mu = 1.0;
  s_.omega = 1.0;
  s_.tau_tilde = tau;
  s_.sigma_tilde = sigma;
  // phi = 1, psi = tau/sigma keeps the alignment psi sigma = phi tau
  s_.log_phi = 0.0;
  s_.log_psi = std::log(tau / sigma);
  const double kappa = std::max(0.0, 1.0 - tau * sigma * norm_K * norm_K);
  delta_ = 1.0 - std::sqrt(1.0 - kappa);
}

IcPdpsSolver::IcPdpsSolver(ProblemSpec problem, std::shared_ptr<ScheduleSource> sched,
                           PrimalDualPoint u0, bool track_aux)
    : p_(std::move(problem)), sched_(std::move(sched)), track_aux_(track_aux) {
  if (u0.x.size() != p_.primal_dim || u0.y.size() != p_.dual_dim)
    throw std::invalid_argument("IcPdpsSolver: dimension mismatch");
  u_ = std::move(u0);
  x_bar_ = u_.x;
  x_tilde_ = u_.x;
  y_bar_ = u_.y;
  y_tilde_ = u_.y;
  if (track_aux_) {
    zeta_ = u_.x;
    eta_ = u_.y;
  }
  last_state_ = sched_->state();
}

void IcPdpsSolver::step() {
  const StepState &s = sched_->state();
  const StepState &sn = sched_->next();
  const double linv1 = 1.0 / s.lambda - 1.0;  // lambda_i^{-1} - 1
  const double minv1 = 1.0 / s.mu - 1.0;      // mu_{i+1}^{-1} - 1

  // primal half: strong-convexity reweighting, prox, inertial extrapolations
  const double a = s.gamma * s.tau * linv1;
  Vec x_gamma(u_.x.size());
  for (std::size_t k = 0; k < x_gamma.size(); ++k)
    x_gamma[k] = (x_bar_[k] + a * u_.x[k]) / (1.0 + a);
  Vec x_new = p_.prox_G(x_gamma - s.tau_tilde * p_.K.adjoint(y_tilde_), s.tau_tilde);
  Vec x_tilde_new = x_new + linv1 * (x_new - u_.x);
  x_bar_ = x_new + (sn.lambda * linv1) * (x_new - u_.x);

  // dual half, driven by the corrected primal extrapolation
  const double b = s.rho * s.sigma * minv1;
  Vec y_rho(u_.y.size());
  for (std::size_t k = 0; k < y_rho.size(); ++k)
    y_rho[k] = (y_bar_[k] + b * u_.y[k]) / (1.0 + b);
  Vec x_drive = x_tilde_new + s.omega * (x_tilde_new - x_tilde_);
  Vec y_new = p_.prox_Fstar(y_rho + s.sigma * p_.K(x_drive), s.sigma_tilde);
  y_bar_ = y_new + (sn.mu * minv1) * (y_new - u_.y);
  y_tilde_ = y_new + minv1 * (y_new - u_.y);

  if (track_aux_) {
    zeta_ = (1.0 / s.lambda) * x_new - linv1 * u_.x;
    eta_ = (1.0 / s.mu) * y_new - minv1 * u_.y;
  }

  u_.x = std::move(x_new);
  u_.y = std::move(y_new);
  x_tilde_ = std::move(x_tilde_new);
  last_state_ = s;
  sched_->advance();
  ++iter_;
}

PdpsSolver::PdpsSolver(ProblemSpec problem, double tau0, double sigma0, PrimalDualPoint u0,
                       bool accel, double gamma)
    : p_(std::move(problem)), tau_(tau0), sigma_(sigma0), gamma_(gamma), accel_(accel) {
  if (u0.x.size() != p_.primal_dim || u0.y.size() != p_.dual_dim)
    throw std::invalid_argument("PdpsSolver: dimension mismatch");
  u_ = std::move(u0);
}

void PdpsSolver::step() {
  double omega = 1.0;
  double sigma_next = sigma_;
  if (accel_) {
    omega = 1.0 / std::sqrt(1.0 + gamma_ * tau_);
    sigma_next = sigma_ / omega;
  }
  u_ = pdps_pass(p_, u_.x, u_.y, tau_, sigma_next, omega);
  if (accel_) {
    tau_ *= omega;
    sigma_ = sigma_next;
  }
  ++iter_;
}

IPdpsSolver::IPdpsSolver(ProblemSpec problem, double tau, double sigma, double alpha,
                         PrimalDualPoint u0)
    : p_(std::move(problem)), tau_(tau), sigma_(sigma), alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0 / 3.0))
    throw std::invalid_argument("IPdpsSolver: alpha must lie in [0, 1/3)");
  if (u0.x.size() != p_.primal_dim || u0.y.size() != p_.dual_dim)
    throw std::invalid_argument("IPdpsSolver: dimension mismatch");
  u_ = u0;
  u_prev_ = std::move(u0);
}

void IPdpsSolver::step() {
  Vec xb = (1.0 + alpha_) * u_.x - alpha_ * u_prev_.x;
  Vec yb = (1.0 + alpha_) * u_.y - alpha_ * u_prev_.y;
  u_prev_ = u_;
  u_ = pdps_pass(p_, xb, yb, tau_, sigma_, 1.0);
  ++iter_;
}

RPdpsSolver::RPdpsSolver(ProblemSpec problem, double tau, double sigma, double relax,
                         PrimalDualPoint u0)
    : p_(std::move(problem)), tau_(tau), sigma_(sigma), relax_(relax) {
  if (!(relax > 0.0 && relax < 2.0))
    throw std::invalid_argument("RPdpsSolver: relax must lie in (0, 2)");
  if (u0.x.size() != p_.primal_dim || u0.y.size() != p_.dual_dim)
    throw std::invalid_argument("RPdpsSolver: dimension mismatch");
  u_ = std::move(u0);
}

void RPdpsSolver::step() {
  PrimalDualPoint v = pdps_pass(p_, u_.x, u_.y, tau_, sigma_, 1.0);
  axpy(relax_, v.x - u_.x, u_.x);
  axpy(relax_, v.y - u_.y, u_.y);
  ++iter_;
}

FistaSolver::FistaSolver(SmoothProblem problem, Vec x0, double tau)
    : p_(std::move(problem)), x_(x0), x_bar_(std::move(x0)), tau_(tau), lambda_(1.0) {}

void FistaSolver::step() {
  Vec x_new = p_.prox_G(x_bar_ - tau_ * p_.grad_F(x_bar_), tau_);
  const double lambda_next = fista_lambda_next(lambda_, 0.0);
  x_bar_ = x_new + (lambda_next * (1.0 / lambda_ - 1.0)) * (x_new - x_);
  x_ = std::move(x_new);
  lambda_ = lambda_next;
  ++iter_;
}

FistaScSolver::FistaScSolver(SmoothProblem problem, Vec x0, double lambda)
    : p_(std::move(problem)), x_(x0), x_bar_(x0), x_tilde_(std::move(x0)), lambda_(lambda) {
  const double g = p_.gamma, L = p_.L;
  const double lmax = std::sqrt(g * g / (L * L) + 2.0 * g / L) - g / L;
  if (!(g > 0.0)) throw std::invalid_argument("FistaScSolver: gamma > 0 required");
  if (!(lambda > 0.0 && lambda <= lmax + 1e-12))
    throw std::invalid_argument("FistaScSolver: lambda bound violated");
  tau_ = lambda * lambda / (2.0 * g * (1.0 - lambda));
  tau_tilde_ = tau_ / (1.0 + (1.0 / lambda - 1.0) * g * tau_);
}

void FistaScSolver::step() {
  const double linv1 = 1.0 / lambda_ - 1.0;
  Vec x_new = p_.prox_G(x_tilde_ - tau_tilde_ * p_.grad_F(x_bar_), tau_tilde_);
  Vec x_bar_new = x_new + (lambda_ * linv1) * (x_new - x_);
  const double a = p_.gamma * tau_ * linv1;
  x_tilde_ = (1.0 / (1.0 + a)) * (x_bar_new + a * x_new);
  x_bar_ = std::move(x_bar_new);
  x_ = std::move(x_new);
  ++iter_;
}

ProblemSpec dual_swap_adapter(const ProblemSpec &p) {
  ProblemSpec q;
  q.K = scaled_adjoint_op(p.K, -1.0);
  q.prox_G = p.prox_Fstar;
  q.prox_Fstar = p.prox_G;
  q.gamma = p.rho;
  q.rho = p.gamma;
  q.eval_G = p.eval_Fstar;
  q.eval_Fstar = p.eval_G;
  // the composite evaluators of the swapped problem have no closed form here;
  // gap reporting for the swapped run uses the Lagrangian gap
  q.eval_F_of_K = nullptr;
  q.eval_Gstar = nullptr;
  q.primal_dim = p.dual_dim;
  q.dual_dim = p.primal_dim;
  return q;
}

std::vector<IterationRecord> run(
    Solver &solver, const RunOptions &opt,
    const std::function<IterationRecord(long, double)> &metric) {
  std::vector<IterationRecord> out;
  using clock = std::chrono::steady_clock;
  double elapsed = 0.0;
  for (long i = 1; i <= opt.max_iters; ++i) {
    const auto t0 = clock::now();
    solver.step();
    elapsed += std::chrono::duration<double>(clock::now() - t0).count();
    if (metric && opt.stride > 0 && i % opt.stride == 0) out.push_back(metric(i, elapsed));
  }
  return out;
}

}  // namespace icpdps
