#include "rsput/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "rsput/diagnostics.hpp"

namespace rsput {

namespace {

std::string fmt(double v, const char* spec) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), spec, v);
  return buffer;
}

std::string full(double v) { return fmt(v, "%.17g"); }      // round-trips exactly
std::string sig10(double v) { return fmt(v, "%.10g"); }

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

SpaceTimeGrid make_run_grid(const RunConfig& config) {
  if (!(config.h > 0.0)) throw std::invalid_argument("h must be positive");
  const double m_real = config.x_max / config.h;
  const int M = static_cast<int>(std::llround(m_real));
  if (M < 2 || std::abs(m_real - M) > 1e-9 * m_real)
    throw std::invalid_argument("h must divide x_max into an integer number of intervals");
  const double k_target = config.k > 0.0 ? config.k : config.h * config.h;
  const double T = config.model.maturity;
  int N = static_cast<int>(std::llround(T / k_target));
  if (N < 1) N = 1;
  return make_grid(config.x_max, M, T, N);
}

ExperimentResult run_experiment(const RunConfig& config) {
  require_valid(config.model);
  for (double S : config.spots)
    if (!(S > 0.0)) throw std::invalid_argument("spot prices must be positive");
  const SpaceTimeGrid grid = make_run_grid(config);

  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.solution = run(config.model, grid, config.mg);
  result.cpu_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const Solution& sol = result.solution;
  const std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  const int I = config.model.regime_count();

  {
    auto out = open_out(dir / "boundary.csv");
    out << "tau,regime,s_f\n";
    for (int m = 0; m < I; ++m)
      for (std::size_t n = 0; n < sol.boundary[m].size(); ++n)
        out << full(n * grid.k) << ',' << m + 1 << ',' << full(sol.boundary[m][n]) << '\n';
    result.files.push_back((dir / "boundary.csv").string());
  }
  {
    auto out = open_out(dir / "residuals.csv");
    out << "step,iteration,residual\n";
    for (std::size_t n = 0; n < sol.steps.size(); ++n)
      for (std::size_t it = 0; it < sol.steps[n].residual_history.size(); ++it)
        out << n + 1 << ',' << it + 1 << ',' << full(sol.steps[n].residual_history[it]) << '\n';
    result.files.push_back((dir / "residuals.csv").string());
  }

  if (sol.converged) {
    {
      auto out = open_out(dir / "prices.csv");
      out << "S,regime,price,delta,gamma,speed,theta,delta_x,gamma_x,speed_x\n";
      for (int m = 0; m < I; ++m)
        for (double S : config.spots) {
          const SpotQuote q = price_at_spot(sol, m, S);
          out << full(S) << ',' << m + 1 << ',' << sig10(q.price) << ',' << full(q.delta) << ','
              << full(q.gamma) << ',' << full(q.speed) << ',' << full(q.theta) << ','
              << full(q.delta_x) << ',' << full(q.gamma_x) << ',' << full(q.speed_x) << '\n';
        }
      result.files.push_back((dir / "prices.csv").string());
    }
    {
      auto out = open_out(dir / "greeks_profile.csv");
      out << "x,regime,u,w,y,z,theta,kappa,color\n";
      for (int m = 0; m < I; ++m) {
        const FieldSet& fs = sol.fields[m];
        const TimeGreeks& g = sol.greeks[m];
        for (int i = 0; i <= grid.M; ++i)
          out << full(i * grid.h) << ',' << m + 1 << ',' << full(fs.u[i]) << ',' << full(fs.w[i])
              << ',' << full(fs.y[i]) << ',' << full(fs.z[i]) << ',' << full(g.theta[i]) << ','
              << full(g.kappa[i]) << ',' << full(g.color[i]) << '\n';
      }
      result.files.push_back((dir / "greeks_profile.csv").string());
    }
  }

  {
    nlohmann::json j;
    j["grid"] = {{"x_max", grid.x_max}, {"M", grid.M}, {"h", grid.h}, {"N", grid.N}, {"k", grid.k}};
    j["multigrid"] = {{"levels", config.mg.levels},
                      {"schedule_factor", config.mg.schedule_factor},
                      {"nu1", config.mg.nu1},
                      {"nu2", config.mg.nu2},
                      {"fmg", config.mg.fmg},
                      {"eps", config.mg.eps},
                      {"max_outer", config.mg.max_outer}};
    j["converged"] = sol.converged;
    if (!sol.converged) j["failure"] = sol.failure;
    j["completed_steps"] = sol.completed_steps;
    j["global_max_iterations"] = sol.global_max_iterations();
    j["average_iterations"] = sol.average_iterations();
    if (!sol.steps.empty() && sol.steps.back().residual_history.size() >= 2)
      j["rho_final_step"] = sol.steps.back().rho;
    nlohmann::json steps = nlohmann::json::array();
    for (std::size_t n = 0; n < sol.steps.size(); ++n) {
      const StepSummary& s = sol.steps[n];
      steps.push_back({{"step", n + 1},
                       {"iterations", s.iterations},
                       {"converged", s.converged},
                       {"rho", s.rho},
                       {"final_residual", s.final_residual},
                       {"residuals", s.residual_history}});
    }
    j["per_step"] = std::move(steps);
    nlohmann::json sf_final = nlohmann::json::array();
    for (int m = 0; m < I; ++m) sf_final.push_back(sol.boundary[m].back());
    j["boundary_final"] = std::move(sf_final);
    j["cpu_seconds"] = result.cpu_seconds;

    auto out = open_out(dir / "diagnostics.json");
    out << j.dump(2) << '\n';
    result.files.push_back((dir / "diagnostics.json").string());
  }
  return result;
}

LadderResult convergence_study(RunConfig base, int rungs) {
  if (rungs < 3) throw std::invalid_argument("a ladder needs at least three rungs");
  base.model.maturity = 0.1;
  base.mg.fmg = true;
  if (base.k <= 0.0) base.k = base.h * base.h;

  LadderResult ladder;
  std::vector<std::vector<double>> values;  // regime-1 nodal u per rung
  for (int r = 0; r < rungs; ++r) {
    RunConfig cfg = base;
    cfg.h = base.h / std::pow(2.0, r);
    cfg.k = base.k / std::pow(4.0, r);
    const SpaceTimeGrid grid = make_run_grid(cfg);
    const Solution sol = run(cfg.model, grid, cfg.mg);
    if (!sol.converged)
      throw std::runtime_error("ladder rung h = " + std::to_string(cfg.h) + " failed: " +
                               sol.failure);
    ladder.h.push_back(cfg.h);
    values.push_back(sol.fields[0].u);
  }
  for (int r = 0; r + 1 < rungs; ++r) {
    double e = 0.0;
    for (std::size_t i = 0; i < values[r].size(); ++i)
      e = std::max(e, std::abs(values[r][i] - values[r + 1][2 * i]));
    ladder.errors.push_back(e);
  }
  for (int r = 0; r + 2 < rungs; ++r)
    ladder.rates.push_back(roc(ladder.errors[r], ladder.errors[r + 1]));

  if (!base.out_dir.empty()) {
    std::filesystem::create_directories(base.out_dir);
    auto out = open_out(std::filesystem::path(base.out_dir) / "roc.csv");
    out << "h,max_error,roc\n";
    for (int r = 1; r < rungs; ++r) {
      out << full(ladder.h[r]) << ',' << full(ladder.errors[r - 1]) << ',';
      if (r >= 2) out << full(ladder.rates[r - 2]);
      out << '\n';
    }
  }
  return ladder;
}

}  // namespace rsput
