#include "icpdps/schedules.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace icpdps {

ScheduleMode schedule_mode_from_string(const std::string &s) {
  if (s == "thm45") return ScheduleMode::Thm45;
  if (s == "thm46") return ScheduleMode::Thm46;
  if (s == "thm47") return ScheduleMode::Thm47;
  if (s == "thm48") return ScheduleMode::Thm48;
  throw std::invalid_argument("unknown schedule mode: " + s);
}

std::string to_string(ScheduleMode m) {
  switch (m) {
    case ScheduleMode::Thm45: return "thm45";
    case ScheduleMode::Thm46: return "thm46";
    case ScheduleMode::Thm47: return "thm47";
    case ScheduleMode::Thm48: return "thm48";
  }
  return "?";
}

double fista_lambda_next(double lambda, double epsilon) {
  const double linv = 1.0 / lambda;
  return 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * (linv * linv - epsilon * linv)));
}

namespace {

void fill_tildes(StepState &s) {
  s.tau_tilde = s.tau / (1.0 + s.gamma * s.tau * (1.0 / s.lambda - 1.0));
  s.sigma_tilde = s.sigma / (1.0 + s.rho * s.sigma * (1.0 / s.mu - 1.0));
}

}  // namespace

StepState schedule_thm45_next(const StepState &s) {
  if (s.gamma != 0.0 || s.rho != 0.0)
    throw std::invalid_argument("schedule_thm45_next: requires gamma = rho = 0");
  StepState t = s;
  t.i = s.i + 1;
  const double lam1 = s.mu;                                        // lambda_{i+1}
  const double lam2 = lam1 / (1.0 + (1.0 - s.epsilon) * lam1);     // lambda_{i+2}
  t.lambda = lam1;
  t.mu = lam2;
  t.tau = s.tau * lam1 / s.lambda;
  t.sigma = s.sigma * lam2 / lam1;
  t.omega = 1.0;
  t.log_phi = -2.0 * std::log(t.tau);
  t.log_psi = s.log_psi + 2.0 * std::log(lam1 / lam2);
  fill_tildes(t);
  return t;
}

StepState schedule_thm46_next(const StepState &s) {
  if (s.rho != 0.0) throw std::invalid_argument("schedule_thm46_next: requires rho = 0");
  StepState t = s;
  t.i = s.i + 1;
  const double lam1 = s.mu;
  const double tau1 = s.tau * (lam1 / s.lambda) * s.omega;  // tau_{i+1}
  const double root = std::sqrt(lam1 * lam1 + 2.0 * s.gamma * lam1 * tau1);
  const double lam2 = root / (1.0 - s.epsilon * lam1 + root);
  t.lambda = lam1;
  t.mu = lam2;
  t.tau = tau1;
  t.omega = (1.0 / lam2 - 1.0) / (1.0 / lam1 - s.epsilon);
  t.sigma = s.sigma * (lam2 / lam1) / t.omega;
  t.log_phi = -2.0 * std::log(t.tau);
  t.log_psi = s.log_psi + 2.0 * std::log(lam1 / lam2);
  fill_tildes(t);
  return t;
}

StepState schedule_thm47_next(const StepState &s) {
  if (s.gamma != 0.0) throw std::invalid_argument("schedule_thm47_next: requires gamma = 0");
  if (s.epsilon > 0.5) throw std::invalid_argument("schedule_thm47_next: requires epsilon <= 1/2");
  StepState t = s;
  t.i = s.i + 1;
  const double lam1 = s.mu;
  const double lam2 = fista_lambda_next(lam1, s.epsilon);
  t.lambda = lam1;
  t.mu = lam2;
  t.tau = s.tau;  // constant tau_0
  t.sigma = lam1 * lam1 / (2.0 * s.rho);
  t.omega = lam2 / lam1;
  t.log_phi = -2.0 * std::log(lam1);
  t.log_psi = s.log_psi + 2.0 * std::log(s.lambda / lam2);
  fill_tildes(t);
  return t;
}

StepState schedule_thm48(const ScheduleParams &p) {
  if (p.gamma <= 0.0 || p.rho <= 0.0)
    throw std::invalid_argument("schedule_thm48: requires gamma, rho > 0");
  const double lam = p.lambda_const;
  if (!(lam > 0.0 && lam < 1.0)) throw std::invalid_argument("schedule_thm48: lambda in (0,1)");
  const double bound = 4.0 * p.gamma * p.rho * (1.0 / lam - p.epsilon) * (1.0 / lam - 1.0);
  if (p.norm_K * p.norm_K >= bound)
    throw std::invalid_argument("schedule_thm48: ||K||^2 < 4 gamma rho (1/l-eps)(1/l-1) violated");
  const double c = (1.0 - p.epsilon * lam) / (1.0 - lam);
  StepState s;
  s.i = 0;
  s.epsilon = p.epsilon;
  s.gamma = p.gamma;
  s.rho = p.rho;
  s.lambda = lam;
  s.mu = lam;
  s.tau = lam * lam / (2.0 * p.gamma * (1.0 - lam));
  s.sigma = lam * lam / (2.0 * p.rho * (1.0 - lam));
  s.omega = (1.0 / lam - 1.0) / (1.0 / lam - p.epsilon);
  s.log_phi = 0.0;  // phi_i = c^i
  s.log_psi = std::log(c) + std::log(p.rho / p.gamma);  // psi_{i+1} = c^{i+1} rho/gamma
  fill_tildes(s);
  return s;
}

ScheduleGenerator::ScheduleGenerator(ScheduleMode mode, ScheduleParams params)
    : mode_(mode), params_(params) {
  const double K2 = params.norm_K * params.norm_K;
  switch (mode) {
    case ScheduleMode::Thm45:
    case ScheduleMode::Thm46: {
      if (mode == ScheduleMode::Thm45 && (params.gamma != 0.0 || params.rho != 0.0))
        throw std::invalid_argument("thm45 requires gamma = rho = 0");
      if (mode == ScheduleMode::Thm46 && (params.gamma <= 0.0 || params.rho != 0.0))
        throw std::invalid_argument("thm46 requires gamma > 0, rho = 0");
      kappa_ = std::max(0.0, 1.0 - params.tau0 * params.sigma0 * K2);
      StepState s;
      s.i = 0;
      s.epsilon = params.epsilon;
      s.gamma = (mode == ScheduleMode::Thm45) ? 0.0 : params.gamma;
      s.rho = 0.0;
      s.lambda = 1.0;
      s.tau = params.tau0;
      s.log_phi = -2.0 * std::log(params.tau0);
      if (mode == ScheduleMode::Thm45) {
        const double lam1 = 1.0 / (2.0 - params.epsilon);
        s.mu = lam1;
        s.omega = 1.0;
        s.sigma = params.sigma0 * lam1;
      } else {
        const double root = std::sqrt(1.0 + 2.0 * params.gamma * params.tau0);
        const double lam1 = root / (1.0 - params.epsilon + root);
        s.mu = lam1;
        s.omega = (1.0 / lam1 - 1.0) / (1.0 - params.epsilon);
        s.sigma = params.sigma0 * lam1 / s.omega;
      }
      // psi_{i+1} = lambda_{i+1}^{-2} / (tau0 sigma0)
      s.log_psi = -2.0 * std::log(s.mu) - std::log(params.tau0 * params.sigma0);
      fill_tildes(s);
      cur_ = s;
      break;
    }
    case ScheduleMode::Thm47: {
      if (params.gamma != 0.0 || params.rho <= 0.0)
        throw std::invalid_argument("thm47 requires gamma = 0, rho > 0");
      if (params.epsilon > 0.5) throw std::invalid_argument("thm47 requires epsilon <= 1/2");
      kappa_ = std::max(0.0, 1.0 - params.tau0 * K2 / (2.0 * params.rho));
      StepState s;
      s.i = 0;
      s.epsilon = params.epsilon;
      s.gamma = 0.0;
      s.rho = params.rho;
      s.lambda = 1.0;
      s.tau = params.tau0;
      s.sigma = 1.0 / (2.0 * params.rho);  // sigma_1 = lambda_0^2 / (2 rho)
      const double lam1 = fista_lambda_next(1.0, params.epsilon);
      s.mu = lam1;
      s.omega = lam1;
      s.log_phi = 0.0;
      // psi_{i+1} = 2 rho tau0 lambda_i^{-2} lambda_{i+1}^{-2}
      s.log_psi = std::log(2.0 * params.rho * params.tau0) - 2.0 * std::log(lam1);
      fill_tildes(s);
      cur_ = s;
      break;
    }
    case ScheduleMode::Thm48: {
      const double lam = params.lambda_const;
      kappa_ = std::max(0.0, 1.0 - lam * lam * K2 / (4.0 * params.gamma * params.rho *
                                                     (1.0 - params.epsilon * lam) * (1.0 - lam)));
      cur_ = schedule_thm48(params);
      break;
    }
  }
  nxt_ = step_from(cur_);
}

StepState ScheduleGenerator::step_from(const StepState &s) const {
  switch (mode_) {
    case ScheduleMode::Thm45: return schedule_thm45_next(s);
    case ScheduleMode::Thm46: return schedule_thm46_next(s);
    case ScheduleMode::Thm47: return schedule_thm47_next(s);
    case ScheduleMode::Thm48: {
      StepState t = s;
      t.i = s.i + 1;
      const double log_c = std::log((1.0 - s.epsilon * s.lambda) / (1.0 - s.lambda));
      t.log_phi = static_cast<double>(t.i) * log_c;
      t.log_psi = t.log_phi + log_c + std::log(s.rho / s.gamma);
      return t;
    }
  }
  throw std::logic_error("unreachable");
}

void ScheduleGenerator::advance() {
  cur_ = nxt_;
  nxt_ = step_from(nxt_);
  ++i_;
}

std::vector<StepState> ScheduleGenerator::generate(long steps) {
  std::vector<StepState> out;
  out.reserve(steps);
  for (long k = 0; k < steps; ++k) {
    out.push_back(cur_);
    advance();
  }
  return out;
}

namespace {

void track(ConditionResult &c, long idx, double residual) {
  if (residual > c.worst_residual || c.worst_index < 0) {
    c.worst_residual = residual;
    c.worst_index = idx;
  }
}

}  // namespace

ConditionReport verify_conditions(const std::vector<StepState> &states, double kappa,
                                  double norm_K, double tolerance) {
  if (states.size() < 2) throw std::invalid_argument("verify_conditions: need >= 2 states");
  ConditionReport rep;
  rep.tolerance = tolerance;
  ConditionResult align{"alignment psi*sigma = phi*tau", 0.0, -1, true};
  ConditionResult omega{"omega coupling omega*lam*phi*tau = lam*phi*tau", 0.0, -1, true};
  ConditionResult primal_decay{"primal test decay lam^2 phi (1+2 gamma tau/lam) >= next", 0.0, -1,
                               true};
  ConditionResult phitau_lower{"(1-lam') phi' tau' <= phi tau", 0.0, -1, true};
  ConditionResult phitau_mono{"phi tau non-decreasing", 0.0, -1, true};
  ConditionResult dual_decay{"dual test decay lam^2 psi (1+2 rho sigma/lam) >= next", 0.0, -1,
                             true};
  ConditionResult norm_bound{"(1-kappa) lam^2 psi >= phi tau^2 ||K||^2", 0.0, -1, true};

  const double log_K2 = 2.0 * std::log(std::max(norm_K, 1e-300));
  const double log_1mk = std::log(std::max(1.0 - kappa, 1e-300));

  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    const StepState &s = states[k];
    const StepState &t = states[k + 1];
    // equalities, log-domain relative residuals
    track(align, t.i,
          std::abs((s.log_psi + std::log(s.sigma)) - (t.log_phi + std::log(t.tau))));
    track(omega, s.i,
          std::abs((std::log(s.omega * t.lambda) + t.log_phi + std::log(t.tau)) -
                   (std::log(s.lambda) + s.log_phi + std::log(s.tau))));
    // inequalities lhs >= rhs, signed residual log(rhs) - log(lhs)
    {
      const double lhs = 2.0 * std::log(s.lambda) + s.log_phi +
                         std::log1p(2.0 * s.gamma * s.tau / s.lambda);
      const double rhs = 2.0 * std::log(t.lambda) + t.log_phi;
      track(primal_decay, s.i, rhs - lhs);
    }
    {
      const double lhs = s.log_phi + std::log(s.tau);
      const double rhs = std::log(1.0 - t.lambda) + t.log_phi + std::log(t.tau);
      track(phitau_lower, t.i, rhs - lhs);  // -inf rhs (lam'=1) trivially passes
      track(phitau_mono, s.i, lhs - (t.log_phi + std::log(t.tau)));
    }
    {
      // shifted dual-side index: lambda_{i+1} = t.lambda, psi_{i+1} = s.psi,
      // sigma_{i+1} = s.sigma, lambda_{i+2} = t.mu, psi_{i+2} = t.psi
      const double lhs = 2.0 * std::log(t.lambda) + s.log_psi +
                         std::log1p(2.0 * s.rho * s.sigma / t.lambda);
      const double rhs = 2.0 * std::log(t.mu) + t.log_psi;
      track(dual_decay, t.i, rhs - lhs);
    }
  }
  for (const StepState &s : states) {
    const double lhs = log_1mk + 2.0 * std::log(s.mu) + s.log_psi;
    const double rhs = s.log_phi + 2.0 * std::log(s.tau) + log_K2;
    track(norm_bound, s.i, rhs - lhs);
  }
  for (ConditionResult *c :
       {&align, &omega, &primal_decay, &phitau_lower, &phitau_mono, &dual_decay, &norm_bound}) {
    c->pass = c->worst_residual <= tolerance;
    rep.conditions.push_back(*c);
  }
  return rep;
}

std::string ConditionReport::to_text() const {
  std::ostringstream os;
  for (const auto &c : conditions) {
    os << (c.pass ? "pass" : "FAIL") << "  worst " << c.worst_residual << " at i=" << c.worst_index
       << "  " << c.name << "\n";
  }
  return os.str();
}

void write_schedule_csv(const std::string &path, const std::vector<StepState> &states) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f.precision(17);
  f << "i,tau,sigma,lambda,mu,omega,tau_tilde,sigma_tilde,phi,psi\n";
  for (const auto &s : states) {
    f << s.i << ',' << s.tau << ',' << s.sigma << ',' << s.lambda << ',' << s.mu << ',' << s.omega
      << ',' << s.tau_tilde << ',' << s.sigma_tilde << ',' << s.phi() << ',' << s.psi() << '\n';
  }
}

}  // namespace icpdps
