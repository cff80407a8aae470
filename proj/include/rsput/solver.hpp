#pragma once

#include <string>
#include <vector>

#include "rsput/fields.hpp"
#include "rsput/grid.hpp"
#include "rsput/model.hpp"
#include "rsput/multigrid.hpp"

namespace rsput {

/** Time derivatives of u, w, y at one time level: theta, delta decay, color. */
struct TimeGreeks {
  std::vector<double> theta, kappa, color;
};

/**
 * theta/kappa/color via backward differencing: first order from two levels at
 * the first step, second order (3v_new - 4v_mid + v_old)/(2k) afterwards.
 * prev2 == nullptr selects the first-order form.
 */
TimeGreeks compute_time_greeks(const FieldSet& current, const FieldSet& previous,
                               const FieldSet* prev2, double k);

struct StepSummary {
  int iterations = 0;
  bool converged = false;
  double final_residual = 0.0;
  double rho = 0.0;                      // per-step convergence factor (0 if undefined)
  std::vector<double> residual_history;  // normalized value-field residual per iteration
};

struct Solution {
  RegimeModel model;
  SpaceTimeGrid grid;
  MultigridConfig config;
  std::vector<FieldSet> fields;                 // per regime, at tau = T
  std::vector<TimeGreeks> greeks;               // per regime, at tau = T
  std::vector<std::vector<double>> boundary;    // [regime][time level 0..N]
  std::vector<StepSummary> steps;               // one per time step
  int completed_steps = 0;
  bool converged = false;
  std::string failure;

  int global_max_iterations() const;
  double average_iterations() const;
};

/**
 * Payoff state at tau = 0: every nodal array is zero except the node-0
 * Dirichlet data implied by s_f = K (u0 = 0, w0 = -K, and the higher
 * derivative fields at their interior boundary traces).
 */
void init_state(const RegimeModel& model, int M, std::vector<FieldSet>& states,
                std::vector<double>& sf);

/**
 * Marches the coupled systems from the payoff to maturity. On a failed step
 * (non-convergence within max_outer, or a diverged boundary) the partial
 * solution is returned with `converged = false`, the failing step's summary
 * last in `steps`, and a description in `failure`.
 */
Solution run(const RegimeModel& model, const SpaceTimeGrid& grid, const MultigridConfig& config);

}  // namespace rsput
