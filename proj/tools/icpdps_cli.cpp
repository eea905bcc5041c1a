#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "icpdps/dataio.hpp"
#include "icpdps/harness.hpp"
#include "icpdps/schedules.hpp"
#include "icpdps/transforms.hpp"

namespace {

using namespace icpdps;

void add_instance_flags(CLI::App *cmd, RunConfig &cfg) {
  cmd->add_option("--problem", cfg.problem, "denoise | fourier | pet");
  cmd->add_option("--n1", cfg.n1, "image rows");
  cmd->add_option("--n2", cfg.n2, "image columns");
  cmd->add_option("--beta", cfg.beta, "regularisation weight (negative: per-problem default)");
  cmd->add_option("--noise-std", cfg.noise_std, "Gaussian noise standard deviation");
  cmd->add_option("--seed", cfg.seed, "data seed");
  cmd->add_option("--spiral-turns", cfg.spiral_turns, "Fourier mask turns (negative: auto)");
  cmd->add_option("--spiral-thickness", cfg.spiral_thickness, "Fourier mask arm thickness");
  cmd->add_option("--ref-iters", cfg.ref_iters, "iterations for the cached reference run");
  cmd->add_option("--out-dir", cfg.out_dir,
                  "output directory (default: $ICPDPS_OUT_DIR or \"out\")");
}

void add_solver_flags(CLI::App *cmd, RunConfig &cfg) {
  cmd->add_option("--schedule", cfg.schedule, "thm45..thm48 (empty: per-problem default)");
  cmd->add_option("--epsilon", cfg.epsilon, "unrolling slack (negative: default)");
  cmd->add_option("--gamma", cfg.gamma_used, "acceleration factor");
  cmd->add_flag("--assume-gamma", cfg.assume_gamma,
                "accept --gamma beyond the problem's global convexity modulus");
  cmd->add_option("--tau0", cfg.tau0, "initial primal step (negative: default ratio)");
  cmd->add_option("--sigma0", cfg.sigma0, "initial dual step (negative: default ratio)");
  cmd->add_option("--alpha", cfg.alpha, "inertia for the inertial baseline");
  cmd->add_option("--relax", cfg.relax, "over-relaxation for the relaxed baseline");
  cmd->add_option("--max-iters", cfg.max_iters, "iteration budget");
  cmd->add_option("--stride", cfg.stride, "recording stride");
}

std::string trace_path(const RunConfig &cfg, const std::string &solver) {
  return cfg.out_dir + "/" + cfg.problem + "_" + solver + ".csv";
}

std::vector<ThresholdHit> execute_one(RunConfig cfg, const Instance &inst,
                                      const PrimalDualPoint &u_star,
                                      const std::vector<double> &levels) {
  RunResult res = run_config(cfg, inst, u_star);
  apply_defaults(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const std::string path = trace_path(cfg, cfg.solver);
  const std::string tmp = path + ".tmp";
  write_trace(tmp, res.records);
  std::filesystem::rename(tmp, path);
  std::printf("%s: %ld iterations recorded, initial gap %.6g, trace %s\n", cfg.solver.c_str(),
              static_cast<long>(res.records.size()) * cfg.stride, res.gap0, path.c_str());
  return thresholds_reached(res.records, levels);
}

int cmd_run(RunConfig cfg, const std::vector<double> &levels) {
  Instance inst = build_instance(cfg);
  PrimalDualPoint u_star = compute_reference(cfg, inst);
  auto hits = execute_one(cfg, inst, u_star, levels);
  std::fputs(format_threshold_table({cfg.solver}, {hits}, levels).c_str(), stdout);
  return 0;
}

int cmd_compare(RunConfig cfg, std::vector<std::string> solvers,
                const std::vector<double> &levels) {
  Instance inst = build_instance(cfg);
  PrimalDualPoint u_star = compute_reference(cfg, inst);
  std::vector<std::string> names;
  std::vector<std::vector<ThresholdHit>> hits;
  for (const std::string &s : solvers) {
    RunConfig one = cfg;
    one.solver = s;
    one.schedule = cfg.schedule;  // empty selects the per-solver default
    names.push_back(s);
    hits.push_back(execute_one(one, inst, u_star, levels));
  }
  // rank by iterations to the first threshold; never-reached sorts last
  std::vector<std::size_t> order(names.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const ThresholdHit &ha = hits[a][0], &hb = hits[b][0];
    if (ha.reached != hb.reached) return ha.reached;
    return ha.reached && ha.iters < hb.iters;
  });
  std::vector<std::string> sorted_names;
  std::vector<std::vector<ThresholdHit>> sorted_hits;
  for (std::size_t k : order) {
    sorted_names.push_back(names[k]);
    sorted_hits.push_back(hits[k]);
  }
  std::fputs(format_threshold_table(sorted_names, sorted_hits, levels).c_str(), stdout);
  return 0;
}

int cmd_validate(const std::string &mode_str, long steps, ScheduleParams sp, double tolerance) {
  const ScheduleMode mode = schedule_mode_from_string(mode_str);
  ScheduleGenerator gen(mode, sp);
  std::vector<StepState> states = gen.generate(steps);
  ConditionReport report = verify_conditions(states, gen.kappa(), sp.norm_K, tolerance);
  std::fputs(report.to_text().c_str(), stdout);
  bool ok = report.all_pass();

  if (mode == ScheduleMode::Thm45 || mode == ScheduleMode::Thm47) {
    // growth of the inertial parameter: 1/lambda_N >= 1 + (1 - eps) N / 2
    double worst = 0.0;
    long worst_i = -1;
    for (const StepState &s : states) {
      const double margin =
          1.0 / s.lambda - (1.0 + 0.5 * (1.0 - s.epsilon) * static_cast<double>(s.i));
      if (margin < worst) {
        worst = margin;
        worst_i = s.i;
      }
    }
    const bool pass = worst >= -tolerance;
    std::printf("%-28s %s (worst margin %.3g at i=%ld)\n", "inertial growth bound",
                pass ? "pass" : "FAIL", worst, worst_i);
    ok = ok && pass;
  }
  if (mode == ScheduleMode::Thm48) {
    // geometric testing weight: log phi_i = i log c exactly
    const double logc = states.size() > 1 ? states[1].log_phi - states[0].log_phi : 0.0;
    bool pass = true;
    for (const StepState &s : states)
      if (s.log_phi != static_cast<double>(s.i) * logc) pass = false;
    std::printf("%-28s %s (rate %.6g per step)\n", "geometric testing weight",
                pass ? "pass" : "FAIL", std::exp(logc));
    ok = ok && pass;
  }
  std::printf("%s\n", ok ? "all schedule checks passed" : "schedule checks FAILED");
  return ok ? 0 : 1;
}

int cmd_phantom(std::size_t n1, std::size_t n2, std::size_t factor, const std::string &output) {
  ImageBuffer img = shepp_logan(n1, n2);
  if (factor > 1) img = downsample(img, factor);
  const std::size_t clipped = save_image(output, img);
  std::printf("phantom %zux%zu -> %s (%zu values clipped)\n", img.n1, img.n2, output.c_str(),
              clipped);
  return 0;
}

int cmd_noise(const std::string &input, const std::string &output, double std_dev,
              std::uint64_t seed, std::size_t n1, std::size_t n2) {
  ImageBuffer img = input.empty() ? synthetic_scene(n1, n2) : load_image(input);
  ImageBuffer noisy = add_gaussian_noise(img, std_dev, seed);
  const std::size_t clipped = save_image(output, noisy);
  std::printf("noise std %.3g seed %llu -> %s (%zu values clipped)\n", std_dev,
              static_cast<unsigned long long>(seed), output.c_str(), clipped);
  return 0;
}

int cmd_mask(std::size_t n1, std::size_t n2, double turns, double thickness,
             const std::string &output) {
  if (turns <= 0.0) {
    const double rmax = std::hypot(n1 / 2.0, n2 / 2.0);
    turns = std::max(2.0, std::min(14.0, rmax / 12.0));
  }
  Vec mask = spiral_mask(n1, n2, turns, thickness);
  ImageBuffer img{n1, n2, mask};
  for (double &v : img.data) v *= 255.0;
  save_image(output, img);
  std::printf("mask %zux%zu turns %.3g thickness %.3g -> %s (selected fraction %.4f)\n", n1,
              n2, turns, thickness, output.c_str(), mask_selected_fraction(mask));
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"saddle-point splitting benchmark toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");

  RunConfig cfg;
  std::vector<double> levels{-35.0, -40.0, -60.0, -80.0};

  CLI::App *run = app.add_subcommand("run", "run one solver and report thresholds");
  add_instance_flags(run, cfg);
  add_solver_flags(run, cfg);
  run->add_option("--solver", cfg.solver,
                  "pdps | pdps-accel | i-pdps | r-pdps | ic-pdps | ic-pdps-dual | fista");
  run->add_option("--levels", levels, "gap thresholds in dB");

  std::vector<std::string> solvers{"pdps", "i-pdps", "r-pdps", "ic-pdps"};
  CLI::App *compare = app.add_subcommand("compare", "run several solvers on shared data");
  add_instance_flags(compare, cfg);
  add_solver_flags(compare, cfg);
  compare->add_option("--solvers", solvers, "solvers to rank");
  compare->add_option("--levels", levels, "gap thresholds in dB");

  std::string mode = "thm45";
  long steps = 10000;
  double tolerance = 1e-9;
  ScheduleParams sp;
  sp.tau0 = 9.9 / std::sqrt(8.0);
  sp.sigma0 = 0.1 / std::sqrt(8.0);
  sp.norm_K = std::sqrt(8.0);
  CLI::App *validate = app.add_subcommand("validate-schedules", "check step-parameter rules");
  validate->add_option("--mode", mode, "thm45 | thm46 | thm47 | thm48");
  validate->add_option("--steps", steps, "steps to generate");
  validate->add_option("--epsilon", sp.epsilon, "unrolling slack");
  validate->add_option("--gamma", sp.gamma, "primal strong convexity");
  validate->add_option("--rho", sp.rho, "dual strong convexity");
  validate->add_option("--tau0", sp.tau0, "initial primal step");
  validate->add_option("--sigma0", sp.sigma0, "initial dual step");
  validate->add_option("--lambda", sp.lambda_const, "inertial weight (linear-rate regime)");
  validate->add_option("--norm-k", sp.norm_K, "operator norm bound");
  validate->add_option("--tolerance", tolerance, "relative residual tolerance");

  std::size_t pn1 = 256, pn2 = 256, pfactor = 1;
  std::string output = "phantom.pgm";
  CLI::App *phantom = app.add_subcommand("phantom", "write the head phantom");
  phantom->add_option("--n1", pn1, "rows");
  phantom->add_option("--n2", pn2, "columns");
  phantom->add_option("--downsample", pfactor, "block-average factor");
  phantom->add_option("--output", output, "output image (.pgm or .f64)");

  std::string ninput;
  std::string noutput = "noisy.pgm";
  double nstd = 51.0;
  std::uint64_t nseed = 1;
  std::size_t nn1 = 96, nn2 = 64;
  CLI::App *noise = app.add_subcommand("noise", "add Gaussian noise to an image");
  noise->add_option("--input", ninput, "input image (empty: built-in test scene)");
  noise->add_option("--output", noutput, "output image");
  noise->add_option("--std", nstd, "noise standard deviation");
  noise->add_option("--seed", nseed, "noise seed");
  noise->add_option("--n1", nn1, "rows for the built-in scene");
  noise->add_option("--n2", nn2, "columns for the built-in scene");

  std::size_t mn1 = 96, mn2 = 64;
  double mturns = -1.0, mthickness = 1.2;
  std::string moutput = "mask.pgm";
  CLI::App *maskc = app.add_subcommand("mask", "write a spiral frequency mask");
  maskc->add_option("--n1", mn1, "rows");
  maskc->add_option("--n2", mn2, "columns");
  maskc->add_option("--turns", mturns, "spiral turns (non-positive: scale with the grid)");
  maskc->add_option("--thickness", mthickness, "arm thickness");
  maskc->add_option("--output", moutput, "output image");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(cfg, levels);
    if (compare->parsed()) return cmd_compare(cfg, solvers, levels);
    if (validate->parsed()) return cmd_validate(mode, steps, sp, tolerance);
    if (phantom->parsed()) return cmd_phantom(pn1, pn2, pfactor, output);
    if (noise->parsed()) return cmd_noise(ninput, noutput, nstd, nseed, nn1, nn2);
    if (maskc->parsed()) return cmd_mask(mn1, mn2, mturns, mthickness, moutput);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
