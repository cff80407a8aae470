// Command-line front end: model presets in, CSV/JSON result bundles out.
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rsput/experiment.hpp"
#include "rsput/model.hpp"
#include "rsput/pricing.hpp"

namespace {

struct CliOptions {
  std::string preset = "example1";
  // Explicit model data; when rate/sigma/generator are given they replace the preset.
  double strike = -1.0;
  double maturity = -1.0;
  std::vector<double> rate;
  std::vector<double> sigma;
  std::vector<double> generator;  // row-major, length regimes^2
  int steps = 0;                  // explicit N; 0 keeps the k rule
  rsput::RunConfig run;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->set_help_flag("--help", "print this help message and exit");
  cmd->set_config("--config")->description("flat key=value manifest");
  cmd->add_option("--preset", opt.preset, "model preset name (see preset-list)")
      ->capture_default_str();
  cmd->add_option("--strike", opt.strike, "override strike price");
  cmd->add_option("--maturity", opt.maturity, "override maturity in years");
  cmd->add_option("--rate", opt.rate, "per-regime risk-free rates")->delimiter(',');
  cmd->add_option("--sigma", opt.sigma, "per-regime volatilities")->delimiter(',');
  cmd->add_option("--generator", opt.generator,
                  "row-major regime generator matrix (length regimes^2)")
      ->delimiter(',');
  cmd->add_option("--xmax", opt.run.x_max, "log-moneyness domain width")->capture_default_str();
  cmd->add_option("--h", opt.run.h, "space step (must divide xmax)")->capture_default_str();
  cmd->add_option("--k", opt.run.k, "time step; non-positive means k = h^2");
  cmd->add_option("--N", opt.steps, "time-step count (overrides --k)");
  cmd->add_option("--levels", opt.run.mg.levels, "grid levels q (1 = plain Gauss-Seidel)")
      ->capture_default_str();
  cmd->add_option("--c", opt.run.mg.schedule_factor, "defect sweep schedule factor")
      ->capture_default_str();
  cmd->add_option("--nu1", opt.run.mg.nu1, "pre-cycle smoothing sweeps")->capture_default_str();
  cmd->add_option("--nu2", opt.run.mg.nu2, "post-cycle smoothing sweeps")->capture_default_str();
  cmd->add_flag("--fmg", opt.run.mg.fmg, "seed each step with full-multigrid initialization");
  cmd->add_flag("--fmg-first-step", opt.run.mg.fmg_first_step_only,
                "restrict --fmg to the first time step");
  cmd->add_option("--tol", opt.run.mg.eps, "iteration stopping threshold")->capture_default_str();
  cmd->add_option("--max-outer", opt.run.mg.max_outer, "outer iteration cap per step")
      ->capture_default_str();
  cmd->add_option("--spots", opt.run.spots, "asset prices for the quote table")->delimiter(',');
  cmd->add_option("--out", opt.run.out_dir, "output directory")->capture_default_str();
}

rsput::RunConfig resolve(CliOptions& opt) {
  const bool explicit_model = !opt.rate.empty() || !opt.sigma.empty() || !opt.generator.empty();
  rsput::RegimeModel model;
  if (explicit_model) {
    model.rate = opt.rate;
    model.sigma = opt.sigma;
    const std::size_t n = opt.rate.size();
    if (opt.generator.size() != n * n)
      throw CLI::ValidationError("--generator", "needs regimes^2 row-major entries");
    model.generator.assign(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) model.generator[i][j] = opt.generator[i * n + j];
    model.strike = 9.0;
    model.maturity = 1.0;
  } else {
    model = rsput::load_preset(opt.preset);
  }
  if (opt.strike > 0.0) model.strike = opt.strike;
  if (opt.maturity > 0.0) model.maturity = opt.maturity;
  model.tolerance = opt.run.mg.eps;
  rsput::require_valid(model);

  opt.run.model = model;
  if (opt.steps > 0) opt.run.k = model.maturity / opt.steps;
  return opt.run;
}

void print_summary(const rsput::ExperimentResult& result) {
  const rsput::Solution& sol = result.solution;
  std::printf("steps completed     %d / %d\n", sol.completed_steps, sol.grid.N);
  std::printf("converged           %s\n", sol.converged ? "yes" : "no");
  if (!sol.converged) std::printf("failure             %s\n", sol.failure.c_str());
  std::printf("max iterations      %d\n", sol.global_max_iterations());
  std::printf("mean iterations     %.2f\n", sol.average_iterations());
  if (!sol.steps.empty() && sol.steps.back().rho > 0.0)
    std::printf("rho (final step)    %.4f\n", sol.steps.back().rho);
  std::printf("cpu seconds         %.2f\n", result.cpu_seconds);
  for (const std::string& f : result.files) std::printf("wrote %s\n", f.c_str());
}

void print_quotes(const rsput::Solution& sol, const std::vector<double>& spots) {
  if (!sol.converged || spots.empty()) return;
  std::printf("\n%10s", "S");
  for (int m = 0; m < sol.model.regime_count(); ++m) std::printf("  %14s%d", "regime", m + 1);
  std::printf("\n");
  for (double S : spots) {
    std::printf("%10.4f", S);
    for (int m = 0; m < sol.model.regime_count(); ++m)
      std::printf("  %15.10g", rsput::price_at_spot(sol, m, S).price);
    std::printf("\n");
  }
}

int cmd_run(CliOptions& opt) {
  const rsput::RunConfig cfg = resolve(opt);
  const rsput::ExperimentResult result = rsput::run_experiment(cfg);
  print_summary(result);
  print_quotes(result.solution, cfg.spots);
  return result.solution.converged ? 0 : 1;
}

int cmd_convergence_study(CliOptions& opt, int rungs) {
  rsput::RunConfig cfg = resolve(opt);
  const rsput::LadderResult ladder = rsput::convergence_study(cfg, rungs);
  std::printf("%10s  %12s  %8s\n", "h", "max error", "rate");
  for (std::size_t r = 1; r < ladder.h.size(); ++r) {
    std::printf("%10.6g  %12.4e", ladder.h[r], ladder.errors[r - 1]);
    if (r >= 2) std::printf("  %8.3f", ladder.rates[r - 2]);
    std::printf("\n");
  }
  return 0;
}

int cmd_compare_smoothers(CliOptions& opt) {
  const rsput::RunConfig base = resolve(opt);

  rsput::RunConfig gs = base;
  gs.mg.levels = 1;
  gs.mg.nu1 = 1;
  gs.mg.nu2 = 0;
  gs.mg.fmg = false;
  gs.out_dir = base.out_dir + "/gauss-seidel";
  rsput::RunConfig mc = base;
  mc.out_dir = base.out_dir + "/m-cycle";

  const rsput::ExperimentResult first = rsput::run_experiment(gs);
  const rsput::ExperimentResult second = rsput::run_experiment(mc);

  std::printf("%-14s %10s %10s %10s %10s\n", "smoother", "max iter", "mean iter", "rho(T)",
              "cpu s");
  const auto row = [](const char* name, const rsput::ExperimentResult& r) {
    const rsput::Solution& s = r.solution;
    std::printf("%-14s %10d %10.2f %10.4f %10.2f\n", name, s.global_max_iterations(),
                s.average_iterations(), s.steps.empty() ? 0.0 : s.steps.back().rho,
                r.cpu_seconds);
  };
  row("gauss-seidel", first);
  row("m-cycle", second);

  double max_diff = 0.0;
  if (first.solution.converged && second.solution.converged) {
    for (int m = 0; m < base.model.regime_count(); ++m)
      for (std::size_t i = 0; i < first.solution.fields[m].u.size(); ++i)
        max_diff = std::max(max_diff, std::abs(first.solution.fields[m].u[i] -
                                               second.solution.fields[m].u[i]));
    std::printf("max |u difference|  %.3e\n", max_diff);
  }
  return first.solution.converged && second.solution.converged ? 0 : 1;
}

int cmd_preset_list() {
  for (const std::string& name : rsput::preset_names()) {
    const rsput::RegimeModel m = rsput::load_preset(name);
    std::printf("%-12s regimes=%d strike=%g maturity=%g\n", name.c_str(), m.regime_count(),
                m.strike, m.maturity);
    for (int i = 0; i < m.regime_count(); ++i)
      std::printf("    regime %d: r=%g sigma=%g\n", i + 1, m.rate[i], m.sigma[i]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"American put pricer under Markov regime switching"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);

  CliOptions run_opt;
  CLI::App* run_cmd = app.add_subcommand("run", "solve once and write the result bundle");
  add_common_options(run_cmd, run_opt);

  CliOptions ladder_opt;
  int rungs = 3;
  CLI::App* ladder_cmd = app.add_subcommand(
      "convergence-study", "self-convergence ladder with h halved and k quartered per rung");
  add_common_options(ladder_cmd, ladder_opt);
  ladder_cmd->add_option("--rungs", rungs, "refinement levels in the ladder")
      ->capture_default_str();

  CliOptions compare_opt;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare-smoothers", "same problem, plain Gauss-Seidel vs the multigrid cycle");
  add_common_options(compare_cmd, compare_opt);

  app.add_subcommand("preset-list", "list the built-in model presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(run_opt);
    if (ladder_cmd->parsed()) return cmd_convergence_study(ladder_opt, rungs);
    if (compare_cmd->parsed()) return cmd_compare_smoothers(compare_opt);
    return cmd_preset_list();
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
}
