// End-to-end acceptance checks: one PASS/FAIL line per criterion, nonzero
// exit status when anything fails.
#include <cstdio>
#include <string>
#include <vector>

#include "icpdps/harness.hpp"
#include "icpdps/metrics.hpp"
#include "icpdps/solvers.hpp"
#include "oracles.hpp"

using namespace icpdps;

namespace {

int g_failures = 0;

void report(int n, bool pass, const std::string &detail) {
  std::printf("criterion %d: %s%s%s\n", n, pass ? "PASS" : "FAIL",
              detail.empty() ? "" : " - ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char *f, double a, double b = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
void criterion1() {
  LinearOp T = radon4_op(256, 256);
  const bool dims = T.codomain_dim == 1534;
  const double frac = 1534.0 / (256.0 * 256.0);
  const bool pct = std::abs(frac - 0.023) < 0.0005;
  report(1, dims && pct,
         fmt("radon measurements %g, data fraction %.4f", double(T.codomain_dim), frac));
}

// ---------------------------------------------------------------- criterion 2
void criterion2() {
  const double L = std::sqrt(8.0);
  bool ok = true;
  std::string detail;
  for (double eps : {0.0, 0.5, 0.7, 0.9}) {
    for (auto mode : {ScheduleMode::Thm45, ScheduleMode::Thm46, ScheduleMode::Thm47,
                      ScheduleMode::Thm48}) {
      // the constant-step dual-acceleration regime only admits eps <= 1/2
      if (mode == ScheduleMode::Thm47 && eps > 0.5) continue;
      ScheduleParams p;
      p.tau0 = 9.9 / L;
      p.sigma0 = 0.1 / L;
      p.norm_K = L;
      p.epsilon = eps;
      if (mode == ScheduleMode::Thm46) p.gamma = 0.5;
      if (mode == ScheduleMode::Thm47) {
        // dual acceleration swaps the step-size roles; the small default is
        // the admissible one under the norm bound tau ||K||^2 <= 2 rho
        p.rho = 0.5;
        p.tau0 = 0.1 / L;
      }
      if (mode == ScheduleMode::Thm48) {
        // joint strong convexity large enough for the norm bound at eps = 0.9
        p.gamma = p.rho = 1.5;
        p.lambda_const = 0.5;
      }
      ScheduleGenerator gen(mode, p);
      auto states = gen.generate(10000);
      ConditionReport rep = verify_conditions(states, gen.kappa(), L, 1e-9);
      if (!rep.all_pass()) {
        ok = false;
        detail += to_string(mode) + fmt("(eps=%g) conditions fail; ", eps);
      }
      // inertia-sequence growth bound for the unrolled recursions
      if (mode == ScheduleMode::Thm45 || mode == ScheduleMode::Thm47) {
        for (const auto &s : states) {
          const double bound = 1.0 + (1.0 - eps) * s.i / 2.0;
          if (1.0 / s.lambda < bound * (1.0 - 1e-9)) {
            ok = false;
            detail += to_string(mode) + fmt("(eps=%g) growth bound fails at i=%g; ", eps,
                                            double(s.i));
            break;
          }
        }
      }
    }
  }
  report(2, ok, ok ? "all step conditions within 1e-9 over 10^4 steps" : detail);
}

// ---------------------------------------------------------------- criterion 3
void criterion3() {
  RunConfig cfg;
  cfg.problem = "denoise";
  cfg.n1 = cfg.n2 = 32;
  cfg.beta = 0.05;
  cfg.seed = 1;
  cfg.ref_iters = 100000;
  cfg.out_dir = "acceptance_out";
  Instance inst = build_instance(cfg);
  PrimalDualPoint ustar = compute_reference(cfg, inst);
  const double L = std::sqrt(8.0);

  bool ok = true;
  std::string detail;
  for (auto mode : {ScheduleMode::Thm45, ScheduleMode::Thm46}) {
    ScheduleParams sp;
    sp.tau0 = 9.9 / L;
    sp.sigma0 = 0.1 / L;
    sp.norm_K = L;
    sp.epsilon = 0.7;
    if (mode == ScheduleMode::Thm46) sp.gamma = 0.5;
    auto sched = std::make_shared<GeneratorSchedule>(ScheduleGenerator(mode, sp));
    const StepState s0 = sched->state();
    PrimalDualPoint u0{Vec(inst.problem.primal_dim, 0.0), Vec(inst.problem.dual_dim, 0.0)};
    IcPdpsSolver solver(inst.problem, sched, u0, true);
    const double C0 = compute_C0(u0, ustar, s0, inst.problem);
    if (!(C0 > 0.0)) {
      ok = false;
      detail += to_string(mode) + " C0 not positive; ";
      continue;
    }
    // the descent estimate adjusts the gap by the acceleration the schedule
    // assumes, not the full strong convexity of the model
    ProblemSpec cert = inst.problem;
    cert.gamma = sp.gamma;
    cert.rho = sp.rho;
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
      solver.step();
      double lhs;
      if (mode == ScheduleMode::Thm45) {
        const StepState &pv = solver.last_state();
        lhs = pv.phi() * pv.tau * lagrangian_gap(solver.u(), ustar, inst.problem);
      } else {
        lhs = certificate_lhs(solver.delta(), solver.current_state(), solver.last_state(),
                              solver.zeta(), solver.eta(), solver.u(), ustar, cert);
      }
      worst = std::max(worst, lhs / C0);
    }
    if (!(worst <= 1.0 + 1e-6)) {
      ok = false;
      detail += to_string(mode) + fmt(" worst lhs/C0 = %.6f; ", worst);
    } else {
      detail += to_string(mode) + fmt(" worst lhs/C0 = %.4f; ", worst);
    }
  }
  report(3, ok, detail);
}

// ---------------------------------------------------------------- criterion 4
void criterion4() {
  const double L = std::sqrt(8.0);
  ScheduleParams sp;
  sp.tau0 = 9.9 / L;
  sp.sigma0 = 0.1 / L;
  sp.norm_K = L;
  sp.epsilon = 0.7;
  sp.gamma = 0.5;
  ScheduleGenerator gen(ScheduleMode::Thm46, sp);
  auto states = gen.generate(10000);
  // least-squares slope of log(lambda_N^2 phi_N) against log N on [100, 10^4]
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long m = 0;
  for (const auto &s : states) {
    if (s.i < 100) continue;
    const double x = std::log(double(s.i));
    const double y = 2.0 * std::log(s.lambda) + s.log_phi;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const bool quad = slope >= 1.95;

  ScheduleParams sp8;
  sp8.gamma = sp8.rho = 1.5;
  sp8.lambda_const = 0.5;
  sp8.epsilon = 0.7;
  sp8.norm_K = L;
  ScheduleGenerator gen8(ScheduleMode::Thm48, sp8);
  const double lam = sp8.lambda_const;
  const double logc = std::log((1.0 - sp8.epsilon * lam) / (1.0 - lam));
  bool geom = true;
  auto st8 = gen8.generate(10000);
  for (const auto &s : st8) {
    if (s.log_phi != s.i * logc) {
      geom = false;
      break;
    }
  }
  report(4, quad && geom,
         fmt("quadratic-growth slope %.4f; geometric testing weight exact: %.0f", slope,
             geom ? 1.0 : 0.0));
}

// ---------------------------------------------------------------- criterion 5
void criterion5() {
  RunConfig cfg;
  cfg.problem = "denoise";
  cfg.n1 = cfg.n2 = 16;
  cfg.seed = 3;
  Instance inst = build_instance(cfg);
  const double tau = 0.3, sigma = 0.3;
  PrimalDualPoint u0{Vec(inst.problem.primal_dim, 0.0), Vec(inst.problem.dual_dim, 0.0)};
  PdpsSolver ref(inst.problem, tau, sigma, u0);
  auto sched = std::make_shared<ConstantSchedule>(tau, sigma, std::sqrt(8.0));
  IcPdpsSolver ic(inst.problem, sched, u0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    ref.step();
    ic.step();
    worst = std::max(worst, norm2(ref.u().x - ic.u().x) + norm2(ref.u().y - ic.u().y));
  }
  report(5, worst <= 1e-12, fmt("max iterate deviation %.3g over 100 iterations", worst));
}

// ---------------------------------------------------------------- criterion 6
void criterion6() {
  bool ok = true;
  std::string detail;
  double worst_all = 0.0;
  const auto track = [&](const char *name, double err, double tol = 1e-6) {
    worst_all = std::max(worst_all, err);
    if (!(err <= tol)) {
      ok = false;
      detail += std::string(name) + fmt(" err %.3g; ", err);
    }
  };

  // quadratic data-fit prox
  for (int t = 0; t < 100; ++t) {
    Rng rng(100 + t);
    const std::size_t n = 20;
    Vec v = rng.normal_vec(n), z = rng.normal_vec(n);
    const double tau = 0.05 + 3.0 * rng.uniform();
    Vec got = prox_quadratic_identity(v, tau, z);
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double zk = z[k], vk = v[k];
      const double ora = oracles::golden_min(
          [&](double w) { return 0.5 * (w - zk) * (w - zk) + (w - vk) * (w - vk) / (2.0 * tau); },
          -30.0, 30.0);
      err = std::max(err, std::abs(ora - got[k]));
    }
    track("quadratic", err);
  }

  // per-pixel ball projection
  for (int t = 0; t < 100; ++t) {
    Rng rng(200 + t);
    const std::size_t np = 25;
    Vec y = rng.normal_vec(2 * np);
    scale(y, 2.0);
    const double beta = 0.1 + 2.0 * rng.uniform();
    Vec got = project_dual_ball21(y, beta);
    double err = 0.0;
    for (std::size_t pix = 0; pix < np; ++pix) {
      double o1, o2;
      oracles::project_pair_oracle(y[2 * pix], y[2 * pix + 1], beta, o1, o2);
      err = std::max(err, std::max(std::abs(got[2 * pix] - o1), std::abs(got[2 * pix + 1] - o2)));
    }
    track("ball projection", err);
  }

  // box projection
  for (int t = 0; t < 100; ++t) {
    Rng rng(300 + t);
    Vec x = rng.normal_vec(40);
    scale(x, 1.5);
    Vec got = project_box(x, 0.0, 1.0);
    Vec ora = oracles::separable_prox(
        x, 1.0, [](double w) { return (w < 0.0 || w > 1.0) ? 1e9 : 0.0; }, -0.5, 1.5);
    double err = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) err = std::max(err, std::abs(got[k] - ora[k]));
    track("box projection", err);
  }

  // conjugate of the count-data fidelity
  for (int t = 0; t < 100; ++t) {
    Rng rng(400 + t);
    const std::size_t n = 15;
    Vec phi(n), b(n), c(n);
    for (std::size_t k = 0; k < n; ++k) {
      phi[k] = -3.0 + 3.9 * rng.uniform();
      b[k] = 0.5 + 10.0 * rng.uniform();
      c[k] = 0.5 + 2.0 * rng.uniform();
    }
    const double sigma = 0.05 + 2.0 * rng.uniform();
    Vec got = prox_kl_conjugate(phi, sigma, b, c);
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double pk = phi[k], bk = b[k], ck = c[k];
      const double ora = oracles::golden_min(
          [&](double w) {
            return sigma * kl_conjugate_value(w, bk, ck) + 0.5 * (w - pk) * (w - pk);
          },
          -40.0, 1.0 - 1e-12, 300);
      err = std::max(err, std::abs(got[k] - ora));
    }
    track("count-fidelity conjugate", err);
  }

  // sampled-spectrum quadratic prox
  for (int t = 0; t < 100; ++t) {
    Rng rng(500 + t);
    const std::size_t n1 = 6, n2 = 4, n = n1 * n2;
    Vec mask = spiral_mask(n1, n2, 1.5 + rng.uniform(), 1.0, 1.0);
    Vec ref_img = rng.normal_vec(n);
    Vec z_freq = dft2_apply(ref_img, n1, n2);
    for (std::size_t k = 0; k < n; ++k) {
      if (mask[k] == 0.0) z_freq[2 * k] = z_freq[2 * k + 1] = 0.0;
    }
    Vec v = rng.normal_vec(n);
    const double tau = 0.2 + 2.0 * rng.uniform();
    Vec got = prox_quadratic_fourier(v, tau, mask, z_freq, n1, n2);
    Vec ora = oracles::fourier_prox_oracle(v, tau, mask, z_freq, n1, n2);
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k) err = std::max(err, std::abs(got[k] - ora[k]));
    track("sampled-spectrum quadratic", err);
  }

  report(6, ok, ok ? fmt("five operations vs oracles, worst error %.3g", worst_all) : detail);
}

// ---------------------------------------------------------------- criterion 7
void criterion7() {
  bool ok = true;
  std::string detail;
  const auto check = [&](const char *name, double res) {
    if (!(res <= 1e-12)) {
      ok = false;
      detail += std::string(name) + fmt(" residual %.3g; ", res);
    }
  };
  check("difference operator", adjoint_residual(grad_op(48, 32), 20, 1));
  check("radon", adjoint_residual(radon4_op(48, 32), 20, 2));
  check("stacked", adjoint_residual(stack_ops(radon4_op(24, 24), grad_op(24, 24)), 20, 3));

  // masked Fourier sampling as a real-linear map
  {
    const std::size_t n1 = 24, n2 = 16, n = n1 * n2;
    Vec mask = spiral_mask(n1, n2, 3.0, 1.2, 3.0);
    LinearOp S;
    S.domain_dim = n;
    S.codomain_dim = 2 * n;
    S.apply = [mask, n1, n2, n](const Vec &x) {
      Vec f = dft2_apply(x, n1, n2);
      for (std::size_t k = 0; k < n; ++k) {
        if (mask[k] == 0.0) f[2 * k] = f[2 * k + 1] = 0.0;
      }
      return f;
    };
    S.adjoint_apply = [mask, n1, n2, n](const Vec &y) {
      Vec f = y;
      for (std::size_t k = 0; k < n; ++k) {
        if (mask[k] == 0.0) f[2 * k] = f[2 * k + 1] = 0.0;
      }
      return dft2_adjoint_real(f, n1, n2);
    };
    check("masked spectrum", adjoint_residual(S, 20, 4));
  }

  const double est = estimate_norm(grad_op(64, 64), 300, 5);
  if (!(est <= std::sqrt(8.0) + 1e-9)) {
    ok = false;
    detail += fmt("difference norm estimate %.12f exceeds bound; ", est);
  }
  report(7, ok, ok ? fmt("all adjoint residuals <= 1e-12; norm estimate %.6f", est) : detail);
}

// ---------------------------------------------------------------- criterion 8
void criterion8() {
  // diagonal strongly smooth test problem, known minimiser
  const std::size_t n = 64;
  Rng rng(77);
  Vec d = rng.uniform_vec(n, 0.3, 1.0);
  Vec b = rng.normal_vec(n);
  Vec xstar(n);
  for (std::size_t k = 0; k < n; ++k) xstar[k] = b[k] / d[k];
  SmoothProblem sp;
  sp.grad_F = [d, b](const Vec &x) {
    Vec g(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) g[k] = d[k] * x[k] - b[k];
    return g;
  };
  sp.eval_F = [d, b](const Vec &x) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += 0.5 * d[k] * x[k] * x[k] - b[k] * x[k];
    return s;
  };
  sp.prox_G.evaluate = [](const Vec &v, double) { return v; };
  sp.eval_G = [](const Vec &) { return 0.0; };
  sp.L = 1.0;
  const double tau = 1.0 / sp.L;
  Vec x0 = rng.normal_vec(n);
  scale(x0, 3.0);
  const double R0 = norm2sq(x0 - xstar);
  const double fstar = sp.eval_F(xstar);
  FistaSolver fista(sp, x0, tau);
  bool bound_ok = true;
  double worst_ratio = 0.0;
  for (int N = 1; N <= 5000; ++N) {
    fista.step();
    if (N < 2) continue;
    const double gap = sp.eval_F(fista.x()) - fstar;
    const double bound = 2.0 * R0 / (double(N - 1) * double(N - 1) * tau);
    if (gap > 0.0) worst_ratio = std::max(worst_ratio, gap / bound);
    if (gap > bound * (1.0 + 1e-9)) {
      bound_ok = false;
      break;
    }
  }

  // strongly convex variant: windowed linear contraction of the distance
  SmoothProblem sc;
  const double g = 1.0, Lsc = 4.0;
  Vec dsc = rng.uniform_vec(n, g + 0.1, g + Lsc);
  sc.grad_F = [dsc, g](const Vec &x) {
    Vec out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = (dsc[k] - g) * x[k];
    return out;
  };
  sc.eval_F = [dsc, g](const Vec &x) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += 0.5 * (dsc[k] - g) * x[k] * x[k];
    return s;
  };
  sc.prox_G.evaluate = [g](const Vec &v, double t) {
    Vec out = v;
    scale(out, 1.0 / (1.0 + t * g));
    return out;
  };
  sc.eval_G = [g](const Vec &x) { return 0.5 * g * norm2sq(x); };
  sc.L = Lsc;
  sc.gamma = g;
  const double lmax = std::sqrt(g * g / (Lsc * Lsc) + 2.0 * g / Lsc) - g / Lsc;
  FistaScSolver fsc(sc, rng.normal_vec(n), lmax);
  const auto objective = [&](const Vec &x) { return sc.eval_F(x) + sc.eval_G(x); };
  bool lin_ok = true;
  double obj_prev = objective(fsc.x());
  double worst_win = 0.0;
  for (int w = 0; w < 8; ++w) {
    for (int i = 0; i < 50; ++i) fsc.step();
    const double obj = objective(fsc.x());
    if (obj_prev <= 1e-250) break;
    const double rate = std::pow(obj / obj_prev, 1.0 / 50.0);
    worst_win = std::max(worst_win, rate);
    if (rate > (1.0 - lmax) + 0.05) lin_ok = false;
    obj_prev = obj;
  }
  report(8, bound_ok && lin_ok,
         fmt("worst gap/bound ratio %.4f; worst windowed contraction %.4f", worst_ratio,
             worst_win));
}

// ---------------------------------------------------------------- criterion 9
// first iteration after which the gap stays at or below the level; brief
// transient dips during the initial oscillation do not count as reaching it
long iters_to(const std::vector<IterationRecord> &records, double level) {
  long it = -1;
  for (const auto &r : records) {
    if (r.gap_db <= level) {
      if (it < 0) it = r.i;
    } else {
      it = -1;
    }
  }
  return it;
}

void criterion9() {
  bool ok = true;
  std::string detail;

  {
    RunConfig base;
    base.problem = "denoise";
    base.n1 = 96;
    base.n2 = 64;
    base.beta = 0.25;
    base.max_iters = 8000;
    base.stride = 1;
    base.out_dir = "acceptance_out";
    Instance inst = build_instance(base);
    PrimalDualPoint ustar = compute_reference(base, inst);
    auto run_one = [&](const std::string &solver, const std::string &schedule) {
      RunConfig cfg = base;
      cfg.solver = solver;
      cfg.schedule = schedule;
      return iters_to(run_config(cfg, inst, ustar).records, -40.0);
    };
    const long accel = run_one("pdps-accel", "");
    const long ic46 = run_one("ic-pdps", "thm46");
    const long ip = run_one("i-pdps", "");
    const long rp = run_one("r-pdps", "");
    const long ic45 = run_one("ic-pdps", "thm45");
    detail += fmt("denoise -40 dB iters: accel %g, ic(46) %g, ", double(accel), double(ic46));
    detail += fmt("i %g, r %g, ", double(ip), double(rp));
    detail += fmt("ic(45) %g; ", double(ic45));
    const bool fast_ok = accel > 0 && ic46 > 0;
    const bool order = fast_ok &&
                       (ip < 0 || (accel < ip && ic46 < ip)) &&
                       (rp < 0 || (accel < rp && ic46 < rp)) &&
                       (ic45 < 0 || (accel < ic45 && ic46 < ic45));
    if (!order) {
      ok = false;
      detail += "denoise ordering violated; ";
    }
  }

  {
    RunConfig base;
    base.problem = "fourier";
    base.n1 = 96;
    base.n2 = 64;
    base.spiral_turns = 3.0;
    base.spiral_thickness = 0.8;
    base.max_iters = 4000;
    base.stride = 1;
    base.out_dir = "acceptance_out";
    Instance inst = build_instance(base);
    PrimalDualPoint ustar = compute_reference(base, inst);
    auto run_one = [&](const std::string &solver) {
      RunConfig cfg = base;
      cfg.solver = solver;
      if (solver == "ic-pdps") {
        // data term is strongly convex on the sampled frequencies; run the
        // accelerated schedule under that subspace assumption
        cfg.schedule = "thm46";
        cfg.gamma_used = 0.5;
        cfg.assume_gamma = true;
      }
      return iters_to(run_config(cfg, inst, ustar).records, -35.0);
    };
    const long ic = run_one("ic-pdps");
    const long pd = run_one("pdps");
    const long ip = run_one("i-pdps");
    detail += fmt("fourier -35 dB iters: ic %g, pdps %g, ", double(ic), double(pd));
    detail += fmt("i %g", double(ip));
    const bool order = ic > 0 && (pd < 0 || ic < pd) && (ip < 0 || ic < ip);
    if (!order) {
      ok = false;
      detail += "; fourier ordering violated";
    }
  }
  report(9, ok, detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
