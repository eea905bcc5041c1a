#pragma once

#include <string>

#include "icpdps/dataio.hpp"
#include "icpdps/metrics.hpp"
#include "icpdps/problems.hpp"
#include "icpdps/solvers.hpp"

namespace icpdps {

// One benchmark run: problem, solver, schedule and data parameters.
// Negative values mean "use the per-problem default".
struct RunConfig {
  std::string problem = "denoise";  // denoise | fourier | pet
  std::string solver = "pdps";      // pdps | pdps-accel | i-pdps | r-pdps |
                                    // ic-pdps | ic-pdps-dual | fista
  std::string schedule;             // thm45..thm48; empty = per-problem default
  double epsilon = -1.0;
  double gamma_used = 0.5;  // acceleration factor, <= true strong convexity
  bool assume_gamma = false;  // accept gamma_used beyond the problem's global modulus
  double beta = -1.0;
  double tau0 = -1.0;
  double sigma0 = -1.0;
  double alpha = 0.9 / 3.0;
  double relax = 1.5;
  long max_iters = 2000;
  long stride = 10;
  std::uint64_t seed = 1;
  long ref_iters = 100000;
  std::size_t n1 = 32, n2 = 32;
  double noise_std = 51.0;
  double spiral_turns = -1.0;  // negative: scale with the grid diagonal
  double spiral_thickness = 1.2;
  std::string out_dir;  // empty: $ICPDPS_OUT_DIR or "out"
};

struct Instance {
  ProblemSpec problem;
  PrimalDualPoint u0;
  double norm_K = 0.0;
  ImageBuffer clean;
  ImageBuffer noisy;        // denoise/fourier input
  std::string gap_kind;     // "true" or "lagrangian"
  std::string cache_key;
  double mask_fraction = -1.0;  // fourier only
  Vec zero_fill;                // fourier only: naive inversion of the data
};

struct RunResult {
  std::vector<IterationRecord> records;
  double gap0 = 0.0;
  double C0 = std::numeric_limits<double>::quiet_NaN();  // ic-pdps runs only
};

std::string default_out_dir();

// deterministic piecewise-smooth grayscale test scene in [0, 255]
ImageBuffer synthetic_scene(std::size_t n1, std::size_t n2);

void apply_defaults(RunConfig &cfg);

Instance build_instance(const RunConfig &cfg);

// Long baseline run for the reference saddle point, cached on disk under the
// output directory. Accelerated splitting for the strongly convex problem,
// the inertial variant for Fourier inversion, plain splitting otherwise.
PrimalDualPoint compute_reference(const RunConfig &cfg, const Instance &inst);

// Execute the configured solver; gap_db is relative to the gap at u0.
RunResult run_config(const RunConfig &cfg, const Instance &inst, const PrimalDualPoint &u_star);

struct ThresholdHit {
  double db = 0.0;
  bool reached = false;
  long iters = 0;
  double seconds = 0.0;
};

// first record (stride resolution) with gap_db <= level, per level
std::vector<ThresholdHit> thresholds_reached(const std::vector<IterationRecord> &records,
                                             const std::vector<double> &levels);

std::string format_threshold_table(const std::vector<std::string> &names,
                                   const std::vector<std::vector<ThresholdHit>> &hits,
                                   const std::vector<double> &levels);

}  // namespace icpdps
