#include "rsput/multigrid.hpp"

#include <algorithm>
#include <cmath>

#include "rsput/regime_coupling.hpp"
#include "rsput/smoother.hpp"

namespace rsput {

namespace {

// Node-0 data of the derivative fields: the exercised-region payoff K - s_f e^x
// has every x-derivative equal to -s_f at the boundary.
void set_dirichlet(FieldSet& fs, double sf) {
  fs.w[0] = -sf;
  fs.y[0] = -sf;
  fs.z[0] = -sf;
  fs.zh[0] = -sf;
}

double normalized_norm(const std::vector<double>& r, const std::vector<double>& f) {
  const double fn = norm_l2(f);
  const double rn = norm_l2(r);
  return fn > 0.0 ? rn / fn : rn;
}

FieldSet inject_coarse(const FieldSet& fine) {
  const int Mc = (static_cast<int>(fine.u.size()) - 1) / 2;
  FieldSet coarse;
  coarse.resize(Mc + 1);
  for (Field f : kAllFields) {
    const auto& src = fine[f];
    auto& dst = coarse[f];
    for (int i = 0; i <= Mc; ++i) dst[i] = src[2 * i];
  }
  return coarse;
}

}  // namespace

void validate_config(const MultigridConfig& config) {
  if (config.levels < 1) throw std::invalid_argument("levels must be at least 1");
  if (config.schedule_factor < 1) throw std::invalid_argument("schedule factor must be >= 1");
  if (config.nu1 < 1) throw std::invalid_argument("nu1 must be at least 1");
  if (config.nu2 < 0) throw std::invalid_argument("nu2 must be non-negative");
  if (!(config.eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (config.max_outer < 1) throw std::invalid_argument("max_outer must be at least 1");
  if (config.startup_implicit_steps < 0)
    throw std::invalid_argument("startup_implicit_steps must be non-negative");
}

int inner_sweeps(const MultigridConfig& config, int level) {
  const int depth = config.levels - level;
  return config.schedule_factor * depth * depth;
}

double update_boundary(double u0, double strike) {
  const double sf = strike - u0;
  if (!(sf > 0.0))
    throw SolverDivergenceError("free boundary left (0, strike]: s_f = " + std::to_string(sf));
  return sf;
}

TimeStepSolver::TimeStepSolver(RegimeModel model, GridHierarchy hierarchy,
                               MultigridConfig config)
    : model_(std::move(model)), hierarchy_(std::move(hierarchy)), config_(config) {
  require_valid(model_);
  validate_config(config_);
  coeffs_.resize(hierarchy_.levels());
  coeffs_implicit_.resize(hierarchy_.levels());
  for (int L = 0; L < hierarchy_.levels(); ++L) {
    const SpaceTimeGrid& g = hierarchy_.level[L];
    for (int m = 0; m < model_.regime_count(); ++m) {
      const double rq = model_.rate[m] - model_.generator[m][m];
      coeffs_[L].push_back(stencil_coeffs(model_.sigma[m], rq, g.h, g.k));
      coeffs_implicit_[L].push_back(stencil_coeffs(model_.sigma[m], rq, g.h, g.k, 1.0));
    }
  }
}

/*
 * One coupled relaxation pass. All five forces are assembled up front from
 * the pre-sweep iterate (so the moving-frame coefficient, the delta samples
 * driving the value row, and the parent field of each derivative equation
 * are taken at the same sweep level), then the fields relax in chain order.
 * The boundary and the Dirichlet data move right after the value pass, so
 * the derivative sweeps already see the updated frame. Cross-regime samples
 * stay frozen; they refresh once per outer iteration.
 */
void TimeStepSolver::coupled_sweep(int level, const std::vector<FieldSet>& old_states,
                                   const std::vector<double>& sf_old,
                                   std::vector<FieldSet>& states, std::vector<double>& sf,
                                   const std::vector<CoupledSamples>& qs_old,
                                   const std::vector<CoupledSamples>& qs_new,
                                   double theta) const {
  const SpaceTimeGrid& g = hierarchy_.level[level];
  const auto& C = table(theta);
  const int I = model_.regime_count();
  for (int m = 0; m < I; ++m) {
    const double beta = beta_coeff(sf[m], sf_old[m], g.k, model_.rate[m], model_.sigma[m]);
    const RegimeDiscretization d = make_discretization(model_, m, g.h, g.k, beta, theta);
    const ForceSet f = assemble_forces(d, old_states[m], states[m], qs_old[m], qs_new[m]);

    gs_sweep(Field::value, states[m].u, f.u, C[level][m]);
    sf[m] = update_boundary(states[m].u[0], model_.strike);
    set_dirichlet(states[m], sf[m]);

    gs_sweep(Field::delta, states[m].w, f.w, C[level][m]);
    gs_sweep(Field::gamma, states[m].y, f.y, C[level][m]);
    gs_sweep(Field::speed, states[m].z, f.z, C[level][m]);
    gs_sweep(Field::speed_deriv, states[m].zh, f.zh, C[level][m]);
  }
}

void TimeStepSolver::refresh_forces(int level, const std::vector<FieldSet>& old_states,
                                    const std::vector<double>& sf_old,
                                    const std::vector<FieldSet>& iterate,
                                    const std::vector<double>& sf_new,
                                    const std::vector<CoupledSamples>& qs_old,
                                    const std::vector<CoupledSamples>& qs_new,
                                    std::vector<ForceSet>& forces, double theta) const {
  const SpaceTimeGrid& g = hierarchy_.level[level];
  const int I = model_.regime_count();
  for (int m = 0; m < I; ++m) {
    const double beta =
        beta_coeff(sf_new[m], sf_old[m], g.k, model_.rate[m], model_.sigma[m]);
    const RegimeDiscretization d = make_discretization(model_, m, g.h, g.k, beta, theta);
    forces[m] = assemble_forces(d, old_states[m], iterate[m], qs_old[m], qs_new[m]);
  }
}

std::vector<ForceSet> TimeStepSolver::assemble_system(const std::vector<FieldSet>& old_states,
                                                      const std::vector<double>& sf_old,
                                                      const std::vector<FieldSet>& iterate,
                                                      const std::vector<double>& sf_new,
                                                      double theta) const {
  const SpaceTimeGrid& g = hierarchy_.finest();
  const int I = model_.regime_count();
  std::vector<CoupledSamples> qs_old(I), qs_new(I);
  for (int m = 0; m < I; ++m) {
    qs_old[m] = aggregate_coupled(model_, m, old_states, sf_old, g.h, g.M);
    qs_new[m] = aggregate_coupled(model_, m, iterate, sf_new, g.h, g.M);
  }
  std::vector<ForceSet> forces(I);
  refresh_forces(hierarchy_.levels() - 1, old_states, sf_old, iterate, sf_new, qs_old, qs_new,
                 forces, theta);
  return forces;
}

CycleReport TimeStepSolver::advance(std::vector<FieldSet>& states, std::vector<double>& sf) {
  return advance(states, sf, config_.fmg);
}

CycleReport TimeStepSolver::advance(std::vector<FieldSet>& states, std::vector<double>& sf,
                                    bool with_fmg, double theta) {
  const SpaceTimeGrid& fine = hierarchy_.finest();
  const int I = model_.regime_count();
  const int q = hierarchy_.levels();
  if (static_cast<int>(states.size()) != I || static_cast<int>(sf.size()) != I)
    throw std::invalid_argument("state arrays must match the regime count");
  if (theta != 0.5 && theta != 1.0)
    throw std::invalid_argument("theta must be 1/2 or 1");

  const std::vector<FieldSet> old_states = states;
  const std::vector<double> sf_old = sf;
  std::vector<CoupledSamples> qs_old(I);
  for (int m = 0; m < I; ++m)
    qs_old[m] = aggregate_coupled(model_, m, old_states, sf_old, fine.h, fine.M);

  if (with_fmg && q >= 2) fmg_init(states, sf, old_states, sf_old, theta);

  std::vector<CoupledSamples> qs_new(I);
  std::vector<ForceSet> forces(I);
  std::vector<double> sf_last_it = sf;
  CycleReport report;

  for (int it = 0; it < config_.max_outer; ++it) {
    for (int m = 0; m < I; ++m)
      qs_new[m] = aggregate_coupled(model_, m, states, sf, fine.h, fine.M);
    for (int s = 0; s < config_.nu1; ++s)
      coupled_sweep(q - 1, old_states, sf_old, states, sf, qs_old, qs_new, theta);

    refresh_forces(q - 1, old_states, sf_old, states, sf, qs_old, qs_new, forces, theta);
    IterationRecord rec;
    rec.sf = sf;
    for (int m = 0; m < I; ++m)
      rec.boundary_change = std::max(rec.boundary_change, std::abs(sf[m] - sf_last_it[m]));
    sf_last_it = sf;
    for (int m = 0; m < I; ++m)
      for (Field f : kAllFields) {
        const auto r = residual(f, states[m][f], forces[m][f], coeffs(q - 1, m, theta));
        const double nr = normalized_norm(r, forces[m][f]);
        auto& slot = rec.field_residual[field_index(f)];
        slot = std::max(slot, nr);
      }
    rec.u_residual = rec.field_residual[field_index(Field::value)];
    report.history.push_back(rec);

    double gate = rec.u_residual;
    if (config_.gate_all_fields)
      gate = *std::max_element(rec.field_residual.begin(), rec.field_residual.end());
    if (rec.boundary_change < config_.eps && gate < config_.eps) {
      report.converged = true;
      break;
    }
    if (it + 1 < config_.max_outer)
      m_cycle(states, sf, old_states, sf_old, qs_old, qs_new, theta);
  }
  return report;
}

void TimeStepSolver::m_cycle(std::vector<FieldSet>& states, std::vector<double>& sf,
                             const std::vector<FieldSet>& old_states,
                             const std::vector<double>& sf_old,
                             const std::vector<CoupledSamples>& qs_old,
                             std::vector<CoupledSamples>& qs_new, double theta) {
  const SpaceTimeGrid& fine = hierarchy_.finest();
  const int q = hierarchy_.levels();
  const int I = model_.regime_count();
  std::vector<ForceSet> forces(I);

  for (int lev = 0; lev <= q - 2; ++lev) {
    refresh_forces(q - 1, old_states, sf_old, states, sf, qs_old, qs_new, forces, theta);
    const int sweeps = inner_sweeps(config_, lev);
    for (int m = 0; m < I; ++m) {
      for (Field f : kAllFields) {
        std::vector<double> r = residual(f, states[m][f], forces[m][f], coeffs(q - 1, m, theta));
        for (int L = q - 1; L > lev; --L) r = restrict_residual(r, f);
        std::vector<double> e(r.size(), 0.0);
        relax(f, e, r, coeffs(lev, m, theta), sweeps);
        for (int L = lev; L < q - 1; ++L) e = prolong_cubic(e);
        auto& v = states[m][f];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += e[i];
      }
    }
    for (int m = 0; m < I; ++m) {
      sf[m] = update_boundary(states[m].u[0], model_.strike);
      set_dirichlet(states[m], sf[m]);
    }
    for (int m = 0; m < I; ++m)
      qs_new[m] = aggregate_coupled(model_, m, states, sf, fine.h, fine.M);
    for (int s = 0; s < config_.nu2; ++s)
      coupled_sweep(q - 1, old_states, sf_old, states, sf, qs_old, qs_new, theta);
  }
}

void TimeStepSolver::fmg_init(std::vector<FieldSet>& states, std::vector<double>& sf,
                              const std::vector<FieldSet>& old_states,
                              const std::vector<double>& sf_old, double theta) {
  const int q = hierarchy_.levels();
  const int I = model_.regime_count();

  std::vector<std::vector<FieldSet>> old_level(q);
  old_level[q - 1] = old_states;
  for (int L = q - 2; L >= 0; --L) {
    old_level[L].reserve(I);
    for (int m = 0; m < I; ++m) old_level[L].push_back(inject_coarse(old_level[L + 1][m]));
  }
  std::vector<std::vector<CoupledSamples>> qs_old_level(q);
  for (int L = 0; L < q; ++L) {
    const SpaceTimeGrid& g = hierarchy_.level[L];
    qs_old_level[L].resize(I);
    for (int m = 0; m < I; ++m)
      qs_old_level[L][m] = aggregate_coupled(model_, m, old_level[L], sf_old, g.h, g.M);
  }

  std::vector<FieldSet> it_states = old_level[0];
  std::vector<double> sf_it = sf_old;
  std::vector<CoupledSamples> qs_new(I);

  const auto mini_iterations = [&](int level, int count, bool to_tolerance) {
    const SpaceTimeGrid& g = hierarchy_.level[level];
    for (int n = 0; n < count; ++n) {
      for (int m = 0; m < I; ++m)
        qs_new[m] = aggregate_coupled(model_, m, it_states, sf_it, g.h, g.M);
      coupled_sweep(level, old_level[level], sf_old, it_states, sf_it, qs_old_level[level],
                    qs_new, theta);
      if (to_tolerance) {
        std::vector<ForceSet> forces(I);
        refresh_forces(level, old_level[level], sf_old, it_states, sf_it, qs_old_level[level],
                       qs_new, forces, theta);
        double gate = 0.0;
        for (int m = 0; m < I; ++m) {
          const auto r =
              residual(Field::value, it_states[m].u, forces[m].u, coeffs(level, m, theta));
          gate = std::max(gate, normalized_norm(r, forces[m].u));
        }
        if (gate < config_.eps) break;
      }
    }
  };

  mini_iterations(0, 500, true);
  for (int L = 1; L < q; ++L) {
    for (int m = 0; m < I; ++m)
      for (Field f : kAllFields) it_states[m][f] = prolong_cubic(it_states[m][f]);
    mini_iterations(L, inner_sweeps(config_, L), false);
  }
  states = std::move(it_states);
  sf = std::move(sf_it);
}

}  // namespace rsput
