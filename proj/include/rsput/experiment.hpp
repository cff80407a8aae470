#pragma once

#include <string>
#include <vector>

#include "rsput/model.hpp"
#include "rsput/multigrid.hpp"
#include "rsput/pricing.hpp"
#include "rsput/solver.hpp"

namespace rsput {

/** A fully resolved solver run plus the output location. */
struct RunConfig {
  RegimeModel model;
  double x_max = 3.0;
  double h = 0.025;
  double k = -1.0;  // non-positive selects the parabolic default k = h^2
  MultigridConfig mg;
  // Readout ladder spanning deep-in-the-money through far out-of-the-money.
  // An explicitly empty list suppresses the quote rows (header only).
  std::vector<double> spots = {3.5, 4.0, 4.5, 6.0, 7.5, 8.5, 9.0, 9.5, 10.5, 12.0};
  std::string out_dir = "out";
};

/** M = x_max/h (must divide evenly), N = T/k rounded with k adjusted to N*k = T. */
SpaceTimeGrid make_run_grid(const RunConfig& config);

struct ExperimentResult {
  Solution solution;
  std::vector<std::string> files;
  double cpu_seconds = 0.0;
};

/**
 * Runs the solver and writes the output bundle into out_dir: prices.csv
 * (spot quotes with price- and log-space Greeks), boundary.csv (free-boundary
 * trajectories), greeks_profile.csv (nodal fields and time Greeks at
 * maturity), residuals.csv (per-step per-iteration normalized residuals) and
 * diagnostics.json (iteration counts, per-step convergence factors, timing).
 * Prices carry 10 significant digits; every other numeric field full
 * precision. On failure the diagnostic files still appear and the returned
 * solution says why.
 */
ExperimentResult run_experiment(const RunConfig& config);

/**
 * Self-convergence ladder: `rungs` runs starting at (h, k) with h halved and
 * k quartered per rung, maturity forced to 0.1 and full-multigrid seeding on.
 * errors[i] is the co-located max difference of regime-1 values between rungs
 * i and i+1; rates[i] = log2(errors[i]/errors[i+1]). Writes roc.csv when
 * out_dir is non-empty.
 */
struct LadderResult {
  std::vector<double> h;       // per rung
  std::vector<double> errors;  // size rungs-1
  std::vector<double> rates;   // size rungs-2
};

LadderResult convergence_study(RunConfig base, int rungs = 3);

}  // namespace rsput
