#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "icpdps/core.hpp"

namespace icpdps {

// Parameter regimes, by the pattern of strong convexity they assume:
//   Thm45: gamma = 0, rho = 0 (O(1/N) gap)
//   Thm46: gamma > 0, rho = 0 (O(1/N^2))
//   Thm47: gamma = 0, rho > 0 (O(1/N^2), constant tau)
//   Thm48: gamma > 0, rho > 0 (linear rate, constant parameters)
enum class ScheduleMode { Thm45, Thm46, Thm47, Thm48 };

ScheduleMode schedule_mode_from_string(const std::string &s);
std::string to_string(ScheduleMode m);

struct ScheduleParams {
  double gamma = 0.0;
  double rho = 0.0;
  double epsilon = 0.7;  // unrolling slack
  double tau0 = 1.0;
  double sigma0 = 1.0;
  double lambda_const = 0.5;  // lambda for the linear-rate regime
  double norm_K = 1.0;
  double kappa = -1.0;  // derived from the initialisation when negative
};

// One iteration's parameter tuple. Index i holds (tau_i, sigma_{i+1},
// lambda_i, mu_{i+1}, omega_i, tilde tau_i, tilde sigma_{i+1}) together with
// the testing parameters (phi_i, psi_{i+1}) kept in log form so that the
// exponentially growing regime stays representable.
struct StepState {
  long i = 0;
  double tau = 0.0;
  double sigma = 0.0;
  double lambda = 1.0;
  double mu = 1.0;
  double omega = 1.0;
  double tau_tilde = 0.0;
  double sigma_tilde = 0.0;
  double log_phi = 0.0;
  double log_psi = 0.0;
  double epsilon = 0.0;
  double gamma = 0.0;
  double rho = 0.0;

  double phi() const { return std::exp(log_phi); }
  double psi() const { return std::exp(log_psi); }
};

// lambda_{i+1} = 2 / (1 + sqrt(1 + 4 (lambda^{-2} - eps lambda^{-1})));
// preserves lambda_{i+1}^{-2} - lambda_{i+1}^{-1} = lambda^{-2} - eps lambda^{-1}.
double fista_lambda_next(double lambda, double epsilon);

class ScheduleGenerator {
 public:
  ScheduleGenerator(ScheduleMode mode, ScheduleParams params);

  const StepState &state() const { return cur_; }
  const StepState &next() const { return nxt_; }  // state at index i+1
  void advance();

  ScheduleMode mode() const { return mode_; }
  const ScheduleParams &params() const { return params_; }
  double kappa() const { return kappa_; }
  double delta() const { return 1.0 - std::sqrt(1.0 - kappa_); }

  std::vector<StepState> generate(long steps);

 private:
  StepState step_from(const StepState &s) const;

  ScheduleMode mode_;
  ScheduleParams params_;
  double kappa_ = 0.0;
  long i_ = 0;
  StepState cur_, nxt_;
};

// Single-step transition functions mirroring the four parameter regimes.
// Input is the state at index i, output the state at index i+1.
StepState schedule_thm45_next(const StepState &s);
StepState schedule_thm46_next(const StepState &s);
StepState schedule_thm47_next(const StepState &s);
StepState schedule_thm48(const ScheduleParams &params);  // constant state

struct ConditionResult {
  std::string name;
  double worst_residual = 0.0;  // signed, log-domain relative; pass iff <= tol
  long worst_index = -1;
  bool pass = true;
};

struct ConditionReport {
  std::vector<ConditionResult> conditions;
  double tolerance = 1e-9;
  bool all_pass() const {
    for (const auto &c : conditions)
      if (!c.pass) return false;
    return true;
  }
  std::string to_text() const;
};

// Residuals of the coupled step/testing-parameter conditions over a generated
// sequence: the two equalities (alignment psi sigma = phi tau and the omega
// coupling), the primal and dual monotonicity inequalities, and the kappa
// norm bound (1-kappa) lambda^2 psi >= phi tau^2 ||K||^2.
ConditionReport verify_conditions(const std::vector<StepState> &states, double kappa,
                                  double norm_K, double tolerance = 1e-9);

void write_schedule_csv(const std::string &path, const std::vector<StepState> &states);

}  // namespace icpdps
