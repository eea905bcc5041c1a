#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "icpdps/schedules.hpp"

using namespace icpdps;

namespace {

ScheduleParams benchmark_params(double eps) {
  ScheduleParams p;
  p.norm_K = std::sqrt(8.0);
  p.tau0 = 9.9 / p.norm_K;
  p.sigma0 = 0.1 / p.norm_K;
  p.epsilon = eps;
  return p;
}

}  // namespace

TEST_CASE("fista lambda recurrence invariant") {
  for (double eps : {0.0, 0.3, 0.5}) {
    double lam = 1.0;
    for (int i = 0; i < 200; ++i) {
      const double nxt = fista_lambda_next(lam, eps);
      const double lhs = 1.0 / (nxt * nxt) - 1.0 / nxt;
      const double rhs = 1.0 / (lam * lam) - eps / lam;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      lam = nxt;
    }
  }
  // eps = 0 from lambda = 1: the classical golden-step value
  CHECK(fista_lambda_next(1.0, 0.0) == doctest::Approx(2.0 / (1.0 + std::sqrt(5.0))));
}

TEST_CASE("mode 45 hand-checked first states") {
  const double eps = 0.7;
  ScheduleParams p = benchmark_params(eps);
  ScheduleGenerator g(ScheduleMode::Thm45, p);
  const StepState &s0 = g.state();
  const double lam1 = 1.0 / (2.0 - eps);
  CHECK(s0.lambda == 1.0);
  CHECK(s0.tau == doctest::Approx(p.tau0));
  CHECK(s0.mu == doctest::Approx(lam1).epsilon(1e-14));
  CHECK(s0.sigma == doctest::Approx(p.sigma0 * lam1).epsilon(1e-14));
  CHECK(s0.omega == 1.0);
  CHECK(s0.phi() == doctest::Approx(1.0 / (p.tau0 * p.tau0)).epsilon(1e-12));
  CHECK(s0.psi() ==
        doctest::Approx(1.0 / (lam1 * lam1 * p.tau0 * p.sigma0)).epsilon(1e-12));
  CHECK(s0.tau_tilde == s0.tau);  // gamma = 0
  g.advance();
  const StepState &s1 = g.state();
  CHECK(s1.lambda == doctest::Approx(lam1).epsilon(1e-14));
  CHECK(s1.tau == doctest::Approx(p.tau0 * lam1).epsilon(1e-14));
  const double lam2 = lam1 / (1.0 + (1.0 - eps) * lam1);
  CHECK(s1.mu == doctest::Approx(lam2).epsilon(1e-14));
}

TEST_CASE("mode 45 invariants over many steps") {
  ScheduleParams p = benchmark_params(0.7);
  ScheduleGenerator g(ScheduleMode::Thm45, p);
  auto states = g.generate(2000);
  // inverse lambda grows linearly: 1/lambda_N = 1 + (1-eps) N exactly
  for (std::size_t k : {std::size_t(10), std::size_t(500), std::size_t(1999)}) {
    CHECK(1.0 / states[k].lambda ==
          doctest::Approx(1.0 + 0.3 * static_cast<double>(k)).epsilon(1e-10));
    CHECK(1.0 / states[k].lambda >= 1.0 + 0.3 * k / 2.0);  // growth lower bound
  }
  // product invariance tau_{i+1} sigma_{i+1} / lambda_{i+1}^2 = tau0 sigma0
  for (std::size_t k = 0; k + 1 < states.size(); k += 97) {
    const StepState &s = states[k], &t = states[k + 1];
    CHECK(t.tau * s.sigma / (t.lambda * t.lambda) ==
          doctest::Approx(p.tau0 * p.sigma0).epsilon(1e-10));
  }
  ConditionReport rep = verify_conditions(states, g.kappa(), p.norm_K);
  CHECK(rep.all_pass());
  CHECK(g.kappa() == doctest::Approx(1.0 - 9.9 * 0.1 / 8.0 * 8.0).epsilon(1e-12));
}

TEST_CASE("mode 46 conditions and quadratic growth") {
  ScheduleParams p = benchmark_params(0.7);
  p.gamma = 0.5;
  ScheduleGenerator g(ScheduleMode::Thm46, p);
  auto states = g.generate(5000);
  ConditionReport rep = verify_conditions(states, g.kappa(), p.norm_K);
  INFO(rep.to_text());
  CHECK(rep.all_pass());
  // lambda_N^2 phi_N grows ~ N^2 (accelerated objective-weight growth)
  const StepState &a = states[100], &b = states[4999];
  const double la = 2.0 * std::log(a.lambda) + a.log_phi;
  const double lb = 2.0 * std::log(b.lambda) + b.log_phi;
  const double slope = (lb - la) / (std::log(4999.0) - std::log(100.0));
  CHECK(slope >= 1.95);
}

TEST_CASE("mode 47 constant tau and derived sigma") {
  ScheduleParams p = benchmark_params(0.5);
  p.tau0 = 0.2;
  p.rho = 1.0;
  ScheduleGenerator g(ScheduleMode::Thm47, p);
  auto states = g.generate(3000);
  for (std::size_t k = 0; k < states.size(); k += 211) {
    CHECK(states[k].tau == 0.2);
    // sigma_{i+1} = lambda_i^2 / (2 rho)
    CHECK(states[k].sigma ==
          doctest::Approx(states[k].lambda * states[k].lambda / 2.0).epsilon(1e-12));
    CHECK(states[k].omega ==
          doctest::Approx(states[k].mu / states[k].lambda).epsilon(1e-12));
  }
  ConditionReport rep = verify_conditions(states, g.kappa(), p.norm_K);
  INFO(rep.to_text());
  CHECK(rep.all_pass());
  CHECK(g.kappa() == doctest::Approx(1.0 - 0.2 * 8.0 / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(ScheduleGenerator(ScheduleMode::Thm47, benchmark_params(0.7)),
                  std::invalid_argument);
}

TEST_CASE("mode 48 constant state with exponential tests") {
  ScheduleParams p;
  p.gamma = 1.5;
  p.rho = 1.5;
  p.lambda_const = 0.5;
  p.epsilon = 0.7;
  p.norm_K = std::sqrt(8.0);
  ScheduleGenerator g(ScheduleMode::Thm48, p);
  const double c = (1.0 - p.epsilon * 0.5) / (1.0 - 0.5);
  auto states = g.generate(10000);
  for (std::size_t k : {std::size_t(0), std::size_t(9999)}) {
    CHECK(states[k].lambda == 0.5);
    CHECK(states[k].omega == doctest::Approx(1.0 / c).epsilon(1e-12));
    CHECK(states[k].log_phi ==
          doctest::Approx(static_cast<double>(k) * std::log(c)).epsilon(1e-12));
  }
  CHECK(states[9999].phi() == kInf);  // overflows as a plain double; logs stay finite
  ConditionReport rep = verify_conditions(states, g.kappa(), p.norm_K);
  INFO(rep.to_text());
  CHECK(rep.all_pass());
  // norm constraint violations rejected at construction
  ScheduleParams bad = p;
  bad.gamma = bad.rho = 0.1;
  CHECK_THROWS_AS(ScheduleGenerator(ScheduleMode::Thm48, bad), std::invalid_argument);
}

TEST_CASE("plain splitting regime passes the condition set") {
  // constant lambda = 1, tau = sigma, phi = psi = 1, tau sigma ||K||^2 < 1
  std::vector<StepState> states;
  StepState s;
  s.tau = s.sigma = s.tau_tilde = s.sigma_tilde = 0.3;
  s.lambda = s.mu = s.omega = 1.0;
  s.log_phi = s.log_psi = 0.0;
  for (long i = 0; i < 50; ++i) {
    s.i = i;
    states.push_back(s);
  }
  const double kappa = 1.0 - 0.09;
  ConditionReport rep = verify_conditions(states, kappa, 1.0);
  INFO(rep.to_text());
  CHECK(rep.all_pass());
}

TEST_CASE("deliberate step-size violation fails the named norm bound") {
  ScheduleParams p = benchmark_params(0.7);
  p.sigma0 = 1.01 / (p.tau0 * 8.0);  // tau0 sigma0 ||K||^2 = 1.01
  ScheduleGenerator g(ScheduleMode::Thm45, p);
  auto states = g.generate(100);
  CHECK(g.kappa() == 0.0);  // clamped
  ConditionReport rep = verify_conditions(states, g.kappa(), p.norm_K);
  CHECK_FALSE(rep.all_pass());
  bool norm_cond_failed = false;
  for (const auto &c : rep.conditions)
    if (!c.pass && c.name.find("kappa") != std::string::npos) norm_cond_failed = true;
  CHECK(norm_cond_failed);
}

TEST_CASE("schedule csv dump") {
  ScheduleParams p = benchmark_params(0.7);
  ScheduleGenerator g(ScheduleMode::Thm45, p);
  auto states = g.generate(5);
  const std::string path = "sched_test.csv";
  write_schedule_csv(path, states);
  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  CHECK(line == "i,tau,sigma,lambda,mu,omega,tau_tilde,sigma_tilde,phi,psi");
  int rows = 0;
  while (std::getline(f, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 5);
  std::remove(path.c_str());
}

TEST_CASE("single-step transitions agree with the generator") {
  ScheduleParams p = benchmark_params(0.7);
  p.gamma = 0.5;
  ScheduleGenerator g(ScheduleMode::Thm46, p);
  StepState s = g.state();
  for (int i = 0; i < 20; ++i) {
    g.advance();
    s = schedule_thm46_next(s);
    CHECK(s.lambda == doctest::Approx(g.state().lambda).epsilon(1e-13));
    CHECK(s.tau == doctest::Approx(g.state().tau).epsilon(1e-13));
    CHECK(s.sigma == doctest::Approx(g.state().sigma).epsilon(1e-13));
    CHECK(s.omega == doctest::Approx(g.state().omega).epsilon(1e-13));
  }
}
