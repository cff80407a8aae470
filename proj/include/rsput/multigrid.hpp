#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "rsput/discretization.hpp"
#include "rsput/fields.hpp"
#include "rsput/grid.hpp"
#include "rsput/model.hpp"

namespace rsput {

/**
 * Iteration controls for one time step.
 *
 * levels == 1 degenerates to plain Gauss-Seidel: no coarse grids, nu1 sweeps
 * per outer iteration. schedule_factor scales the per-level defect sweep
 * counts c*(q-i)^2, which spend the most effort on the coarsest grid where
 * sweeps are cheapest. fmg seeds each step with a coarse-to-fine solve
 * instead of the previous time level alone.
 *
 * startup_implicit_steps: the trapezoidal average leaves an undamped
 * period-two mode in the free-boundary motion, which the steep initial drop
 * of the boundary excites; the march therefore runs this many leading steps
 * fully implicit before switching to the trapezoidal weights.
 */
struct MultigridConfig {
  int levels = 3;
  int schedule_factor = 3;
  int nu1 = 2;
  int nu2 = 2;
  bool fmg = false;
  bool fmg_first_step_only = false;
  double eps = 1e-8;
  int max_outer = 10000;
  bool gate_all_fields = false;
  int startup_implicit_steps = 4;
};

void validate_config(const MultigridConfig& config);

/** Defect sweep count c*(q - level)^2 for level 0 (coarsest) .. q-1 (finest). */
int inner_sweeps(const MultigridConfig& config, int level);

struct IterationRecord {
  double u_residual = 0.0;  // max over regimes of ||r_u||_2 / ||f_u||_2
  std::array<double, 5> field_residual{};
  double boundary_change = 0.0;
  std::vector<double> sf;
};

struct CycleReport {
  std::vector<IterationRecord> history;
  bool converged = false;

  int iterations() const { return static_cast<int>(history.size()); }
  double final_residual() const { return history.empty() ? 0.0 : history.back().u_residual; }
};

/** The free boundary escaped (0, strike + slack): the iteration broke down. */
class SolverDivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** s_f = K - u0; throws SolverDivergenceError if the result is not positive. */
double update_boundary(double u0, double strike);

/**
 * Advances the coupled systems of all regimes through one time step.
 *
 * Each outer iteration refreshes the cross-regime samples, relaxes nu1 times,
 * and tests convergence on the boundary change and the normalized value-field
 * residual. One relaxation is a coupled sweep: per regime it reassembles the
 * force of each field from the newest iterate in chain order (value first,
 * then the derivative fields), sweeps it, and refreshes the free boundary,
 * Dirichlet data and moving-frame coefficient right after the value field.
 * While unconverged it runs one modified cycle: every coarse level, coarsest
 * first, receives the restricted fine residual, smooths its defect system
 * from zero with the scheduled sweep count, and sends a cubic-interpolated
 * correction straight to the finest grid, followed by a sample refresh and
 * nu2 coupled sweeps.
 */
class TimeStepSolver {
 public:
  TimeStepSolver(RegimeModel model, GridHierarchy hierarchy, MultigridConfig config);

  /**
   * states/sf hold time level n on entry and level n+1 on return. theta is
   * the time-average weight of the step; only 1/2 (trapezoidal) and 1 (fully
   * implicit) are supported.
   */
  CycleReport advance(std::vector<FieldSet>& states, std::vector<double>& sf);
  CycleReport advance(std::vector<FieldSet>& states, std::vector<double>& sf, bool with_fmg,
                      double theta = 0.5);

  const GridHierarchy& hierarchy() const { return hierarchy_; }
  const MultigridConfig& config() const { return config_; }
  const RegimeModel& model() const { return model_; }

  /**
   * The frozen linear systems seen at a given pair of snapshots: per regime,
   * the forces assembled from (old level, iterate) and the matching stencil
   * coefficients. Lets tests solve the fixed-point system by other means.
   */
  std::vector<ForceSet> assemble_system(const std::vector<FieldSet>& old_states,
                                        const std::vector<double>& sf_old,
                                        const std::vector<FieldSet>& iterate,
                                        const std::vector<double>& sf_new,
                                        double theta = 0.5) const;

  const StencilCoeffs& coeffs(int level, int regime, double theta = 0.5) const {
    return table(theta)[level][regime];
  }

 private:
  const std::vector<std::vector<StencilCoeffs>>& table(double theta) const {
    return theta == 1.0 ? coeffs_implicit_ : coeffs_;
  }
  void fmg_init(std::vector<FieldSet>& states, std::vector<double>& sf,
                const std::vector<FieldSet>& old_states, const std::vector<double>& sf_old,
                double theta);
  void coupled_sweep(int level, const std::vector<FieldSet>& old_states,
                     const std::vector<double>& sf_old, std::vector<FieldSet>& states,
                     std::vector<double>& sf, const std::vector<CoupledSamples>& qs_old,
                     const std::vector<CoupledSamples>& qs_new, double theta) const;
  void refresh_forces(int level, const std::vector<FieldSet>& old_states,
                      const std::vector<double>& sf_old, const std::vector<FieldSet>& iterate,
                      const std::vector<double>& sf_new,
                      const std::vector<CoupledSamples>& qs_old,
                      const std::vector<CoupledSamples>& qs_new,
                      std::vector<ForceSet>& forces, double theta) const;
  void m_cycle(std::vector<FieldSet>& states, std::vector<double>& sf,
               const std::vector<FieldSet>& old_states, const std::vector<double>& sf_old,
               const std::vector<CoupledSamples>& qs_old, std::vector<CoupledSamples>& qs_new,
               double theta);

  RegimeModel model_;
  GridHierarchy hierarchy_;
  MultigridConfig config_;
  std::vector<std::vector<StencilCoeffs>> coeffs_;           // [level][regime], theta = 1/2
  std::vector<std::vector<StencilCoeffs>> coeffs_implicit_;  // [level][regime], theta = 1
};

}  // namespace rsput
