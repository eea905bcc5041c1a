#pragma once

#include <functional>
#include <memory>

#include "icpdps/problems.hpp"
#include "icpdps/schedules.hpp"

namespace icpdps {

// Step-parameter stream consumed by the corrected inertial solver. The
// current state carries index i, next() the state at i+1 (needed for the
// lookahead inertial coefficients).
class ScheduleSource {
 public:
  virtual ~ScheduleSource() = default;
  virtual const StepState &state() const = 0;
  virtual const StepState &next() const = 0;
  virtual void advance() = 0;
  virtual double delta() const = 0;  // 1 - sqrt(1 - kappa)
};

class GeneratorSchedule : public ScheduleSource {
 public:
  explicit GeneratorSchedule(ScheduleGenerator gen) : gen_(std::move(gen)) {}
  const StepState &state() const override { return gen_.state(); }
  const StepState &next() const override { return gen_.next(); }
  void advance() override { gen_.advance(); }
  double delta() const override { return gen_.delta(); }
  const ScheduleGenerator &generator() const { return gen_; }

 private:
  ScheduleGenerator gen_;
};

// lambda = mu = omega = 1 with fixed steps: the plain splitting regime
class ConstantSchedule : public ScheduleSource {
 public:
  ConstantSchedule(double tau, double sigma, double norm_K);
  const StepState &state() const override { return s_; }
  const StepState &next() const override { return s_; }
  void advance() override { ++s_.i; }
  double delta() const override { return delta_; }

 private:
  StepState s_;
  double delta_;
};

class Solver {
 public:
  virtual ~Solver() = default;
  virtual void step() = 0;
  const PrimalDualPoint &u() const { return u_; }
  long iter() const { return iter_; }

 protected:
  PrimalDualPoint u_;
  long iter_ = 0;
};

// Corrected inertial primal-dual splitting driven by a schedule source.
class IcPdpsSolver : public Solver {
 public:
  IcPdpsSolver(ProblemSpec problem, std::shared_ptr<ScheduleSource> sched,
               PrimalDualPoint u0, bool track_aux = false);
  void step() override;

  const Vec &zeta() const { return zeta_; }  // only valid when tracking
  const Vec &eta() const { return eta_; }
  bool tracking() const { return track_aux_; }
  const StepState &current_state() const { return sched_->state(); }  // index = iter()
  const StepState &last_state() const { return last_state_; }         // index = iter()-1
  double delta() const { return sched_->delta(); }

 private:
  ProblemSpec p_;
  std::shared_ptr<ScheduleSource> sched_;
  Vec x_bar_, y_bar_, x_tilde_, y_tilde_;
  Vec zeta_, eta_;
  bool track_aux_;
  StepState last_state_;
};

// Basic or accelerated primal-dual splitting.
class PdpsSolver : public Solver {
 public:
  PdpsSolver(ProblemSpec problem, double tau0, double sigma0, PrimalDualPoint u0,
             bool accel = false, double gamma = 0.0);
  void step() override;
  double tau() const { return tau_; }
  double sigma() const { return sigma_; }

 private:
  ProblemSpec p_;
  double tau_, sigma_, gamma_;
  bool accel_;
};

// Inertial variant: rebases at (1+alpha) u - alpha u_prev, then one
// constant-step splitting pass.
class IPdpsSolver : public Solver {
 public:
  IPdpsSolver(ProblemSpec problem, double tau, double sigma, double alpha, PrimalDualPoint u0);
  void step() override;

 private:
  ProblemSpec p_;
  double tau_, sigma_, alpha_;
  PrimalDualPoint u_prev_;
};

// Over-relaxed variant: u + relax * (pass(u) - u).
class RPdpsSolver : public Solver {
 public:
  RPdpsSolver(ProblemSpec problem, double tau, double sigma, double relax, PrimalDualPoint u0);
  void step() override;

 private:
  ProblemSpec p_;
  double tau_, sigma_, relax_;
};

// Smooth-plus-prox composite problem for the forward-backward solvers:
// min_x F(x) + G(x) with F L-smooth and G prox-friendly.
struct SmoothProblem {
  std::function<Vec(const Vec &)> grad_F;
  std::function<double(const Vec &)> eval_F;
  ProxOperator prox_G;
  std::function<double(const Vec &)> eval_G;
  double L = 1.0;
  double gamma = 0.0;  // strong convexity of G
};

class FistaSolver {
 public:
  FistaSolver(SmoothProblem problem, Vec x0, double tau);
  void step();
  const Vec &x() const { return x_; }
  long iter() const { return iter_; }
  double lambda() const { return lambda_; }

 private:
  SmoothProblem p_;
  Vec x_, x_bar_;
  double tau_, lambda_;
  long iter_ = 0;
};

// strongly convex variant, constant inertial weight (linear rate)
class FistaScSolver {
 public:
  FistaScSolver(SmoothProblem problem, Vec x0, double lambda);
  void step();
  const Vec &x() const { return x_; }
  long iter() const { return iter_; }
  double tau() const { return tau_; }
  double lambda() const { return lambda_; }

 private:
  SmoothProblem p_;
  Vec x_, x_bar_, x_tilde_;
  double lambda_, tau_, tau_tilde_;
  long iter_ = 0;
};

// Saddle problem with primal and dual roles exchanged: objective F*(y),
// coupling -K^*, dual function G, convexity factors swapped.
ProblemSpec dual_swap_adapter(const ProblemSpec &p);

struct IterationRecord {
  long i = 0;
  double elapsed_s = 0.0;
  double gap_db = std::numeric_limits<double>::quiet_NaN();
  double target_db = std::numeric_limits<double>::quiet_NaN();
  double certificate_lhs = std::numeric_limits<double>::quiet_NaN();
  double C0 = std::numeric_limits<double>::quiet_NaN();
};

struct RunOptions {
  long max_iters = 1000;
  long stride = 10;  // metric evaluation cadence
};

// Drives solver steps, timing solver work on a monotonic clock and excluding
// the metric callback from the reported elapsed time. The callback receives
// the iteration index and elapsed seconds and fills the rest of the record.
std::vector<IterationRecord> run(
    Solver &solver, const RunOptions &opt,
    const std::function<IterationRecord(long i, double elapsed_s)> &metric);

}  // namespace icpdps
