#include "rsput/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "rsput/diagnostics.hpp"

namespace rsput {

TimeGreeks compute_time_greeks(const FieldSet& current, const FieldSet& previous,
                               const FieldSet* prev2, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  const std::size_t n = current.u.size();
  if (previous.u.size() != n || (prev2 && prev2->u.size() != n))
    throw std::invalid_argument("time levels must share the grid");

  TimeGreeks g;
  g.theta.resize(n);
  g.kappa.resize(n);
  g.color.resize(n);
  const auto diff = [&](const std::vector<double>& now, const std::vector<double>& mid,
                        const std::vector<double>* old, std::size_t i) {
    if (old) return (3.0 * now[i] - 4.0 * mid[i] + (*old)[i]) / (2.0 * k);
    return (now[i] - mid[i]) / k;
  };
  for (std::size_t i = 0; i < n; ++i) {
    g.theta[i] = diff(current.u, previous.u, prev2 ? &prev2->u : nullptr, i);
    g.kappa[i] = diff(current.w, previous.w, prev2 ? &prev2->w : nullptr, i);
    g.color[i] = diff(current.y, previous.y, prev2 ? &prev2->y : nullptr, i);
  }
  return g;
}

int Solution::global_max_iterations() const {
  int max_iter = 0;
  for (const StepSummary& s : steps) max_iter = std::max(max_iter, s.iterations);
  return max_iter;
}

double Solution::average_iterations() const {
  if (steps.empty()) return 0.0;
  double sum = 0.0;
  for (const StepSummary& s : steps) sum += s.iterations;
  return sum / static_cast<double>(steps.size());
}

void init_state(const RegimeModel& model, int M, std::vector<FieldSet>& states,
                std::vector<double>& sf) {
  require_valid(model);
  const int I = model.regime_count();
  const double K = model.strike;
  states.assign(I, FieldSet{});
  sf.assign(I, K);

  // u(x, 0) = 0 everywhere (the boundary starts at the strike); the
  // derivative fields carry the exercised-payoff value -s_f = -K at node 0.
  for (int m = 0; m < I; ++m) {
    FieldSet& fs = states[m];
    fs.resize(M + 1);
    fs.w[0] = -K;
    fs.y[0] = -K;
    fs.z[0] = -K;
    fs.zh[0] = -K;
  }
}

namespace {

StepSummary summarize(const CycleReport& report) {
  StepSummary s;
  s.iterations = report.iterations();
  s.converged = report.converged;
  s.final_residual = report.final_residual();
  s.residual_history.reserve(report.history.size());
  for (const IterationRecord& rec : report.history) s.residual_history.push_back(rec.u_residual);
  if (s.residual_history.size() >= 2) s.rho = conv_factor(s.residual_history);
  return s;
}

}  // namespace

Solution run(const RegimeModel& model, const SpaceTimeGrid& grid,
             const MultigridConfig& config) {
  require_valid(model);
  validate_config(config);

  Solution sol;
  sol.model = model;
  sol.grid = grid;
  sol.config = config;

  const int I = model.regime_count();
  TimeStepSolver stepper(model, build_hierarchy(grid.x_max, grid.M, model.maturity, grid.N,
                                                config.levels),
                         config);

  std::vector<FieldSet> states;
  std::vector<double> sf;
  init_state(model, grid.M, states, sf);

  sol.boundary.assign(I, std::vector<double>{});
  for (int m = 0; m < I; ++m) {
    sol.boundary[m].reserve(grid.N + 1);
    sol.boundary[m].push_back(sf[m]);
  }
  sol.steps.reserve(grid.N);

  std::vector<FieldSet> prev = states;   // level n-1 once two steps exist
  std::vector<FieldSet> older = states;  // level n-2
  sol.converged = true;

  for (int n = 1; n <= grid.N; ++n) {
    const bool with_fmg =
        config.fmg && (!config.fmg_first_step_only || n == 1);
    const double theta = n <= config.startup_implicit_steps ? 1.0 : 0.5;
    older = std::move(prev);
    prev = states;
    CycleReport report;
    try {
      report = stepper.advance(states, sf, with_fmg, theta);
    } catch (const SolverDivergenceError& err) {
      sol.steps.push_back(StepSummary{});
      sol.converged = false;
      sol.failure = "step " + std::to_string(n) + ": " + err.what();
      break;
    }
    sol.steps.push_back(summarize(report));
    if (!report.converged) {
      sol.converged = false;
      sol.failure = "step " + std::to_string(n) + ": no convergence within " +
                    std::to_string(config.max_outer) + " iterations";
      break;
    }
    sol.completed_steps = n;
    sf_prev = sf_entry;
    for (int m = 0; m < I; ++m) sol.boundary[m].push_back(sf[m]);

    if (n == grid.N) {
      sol.greeks.clear();
      for (int m = 0; m < I; ++m)
        sol.greeks.push_back(
            compute_time_greeks(states[m], prev[m], n >= 2 ? &older[m] : nullptr, grid.k));
    }
  }

  sol.fields = std::move(states);
  return sol;
}

}  // namespace rsput
