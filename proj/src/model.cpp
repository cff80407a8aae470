#include "rsput/model.hpp"

#include <cmath>
#include <stdexcept>

namespace rsput {

namespace {

std::string at(std::string_view what, int i) {
  return std::string(what) + " at regime " + std::to_string(i);
}

}  // namespace

std::optional<std::string> validate_model(const RegimeModel& model) {
  if (!(model.strike > 0.0)) return "strike must be positive";
  if (!(model.maturity > 0.0)) return "maturity must be positive";
  if (!(model.tolerance > 0.0)) return "tolerance must be positive";

  const std::size_t regimes = model.rate.size();
  if (regimes == 0) return "at least one regime required";
  if (model.sigma.size() != regimes) return "sigma size differs from rate size";
  if (model.generator.size() != regimes) return "generator row count differs from regime count";

  for (std::size_t m = 0; m < regimes; ++m) {
    if (!(model.sigma[m] > 0.0)) return at("sigma must be positive", static_cast<int>(m));
    if (model.rate[m] < 0.0) return at("rate must be non-negative", static_cast<int>(m));
    if (model.generator[m].size() != regimes)
      return at("generator row has wrong length", static_cast<int>(m));
  }

  double q_scale = 0.0;
  for (const auto& row : model.generator)
    for (double q : row) q_scale = std::max(q_scale, std::abs(q));
  const double row_sum_tol = 1e-12 * std::max(q_scale, 1.0);

  for (std::size_t m = 0; m < regimes; ++m) {
    double row_sum = 0.0;
    for (std::size_t l = 0; l < regimes; ++l) {
      row_sum += model.generator[m][l];
      if (l != m && model.generator[m][l] < 0.0)
        return "generator off-diagonal negative at (" + std::to_string(m) + "," +
               std::to_string(l) + ")";
    }
    if (std::abs(row_sum) > row_sum_tol)
      return at("generator row sum is not zero", static_cast<int>(m));
  }
  return std::nullopt;
}

void require_valid(const RegimeModel& model) {
  if (auto message = validate_model(model)) throw std::invalid_argument(*message);
}

RegimeModel load_preset(std::string_view name) {
  RegimeModel model;
  model.strike = 9.0;
  model.maturity = 1.0;
  model.tolerance = 1e-8;
  if (name == "example1") {
    model.rate = {0.10, 0.05};
    model.sigma = {0.80, 0.30};
    model.generator = {{-6.0, 6.0}, {9.0, -9.0}};
  } else if (name == "example2") {
    model.rate = {0.05, 0.05};
    model.sigma = {0.15, 0.20};
    model.generator = {{-6.0, 6.0}, {9.0, -9.0}};
  } else if (name == "fourregime") {
    model.rate = {0.02, 0.10, 0.06, 0.15};
    model.sigma = {0.90, 0.50, 0.70, 0.20};
    const double q = 1.0 / 3.0;
    model.generator.assign(4, std::vector<double>(4, q));
    for (int m = 0; m < 4; ++m) model.generator[m][m] = -1.0;
  } else {
    throw std::invalid_argument("unknown preset: " + std::string(name));
  }
  return model;
}

std::vector<std::string> preset_names() { return {"example1", "example2", "fourregime"}; }

}  // namespace rsput
