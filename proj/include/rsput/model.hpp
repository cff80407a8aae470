#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsput {

/**
 * Market/contract description for an American put whose coefficients switch
 * between a finite set of regimes driven by a continuous-time Markov chain.
 *
 * `generator` is the chain's generator matrix Q: off-diagonal entries are
 * transition intensities, each row sums to zero, so the diagonal entries are
 * non-positive. `rate[m]` and `sigma[m]` are the risk-free rate and
 * volatility while the chain sits in regime m.
 */
struct RegimeModel {
  double strike = 0.0;
  double maturity = 0.0;
  std::vector<double> rate;
  std::vector<double> sigma;
  std::vector<std::vector<double>> generator;
  double tolerance = 1e-8;  // iteration stopping threshold carried with the model

  int regime_count() const { return static_cast<int>(rate.size()); }
};

/**
 * Checks every model constraint and returns the first violation as a message,
 * or nullopt when the model is usable. Pure; never throws.
 *
 * Constraints: strike > 0, maturity > 0, at least one regime, matching array
 * sizes, sigma[m] > 0, rate[m] >= 0, square generator with non-negative
 * off-diagonal entries and row sums that vanish to a tolerance scaled by the
 * largest |Q| entry, tolerance > 0.
 */
std::optional<std::string> validate_model(const RegimeModel& model);

/** Throws std::invalid_argument with the validation message on a bad model. */
void require_valid(const RegimeModel& model);

/**
 * Named parameter sets used throughout the tests and CLI:
 *  - "example1": two regimes, r = {0.10, 0.05}, sigma = {0.80, 0.30},
 *                Q = {{-6, 6}, {9, -9}}, K = 9, T = 1.
 *  - "example2": two regimes, r = {0.05, 0.05}, sigma = {0.15, 0.20},
 *                same Q, K = 9, T = 1.
 *  - "fourregime": four regimes, r = {0.02, 0.10, 0.06, 0.15},
 *                sigma = {0.90, 0.50, 0.70, 0.20}, q_ml = 1/3 off diagonal,
 *                q_mm = -1, K = 9, T = 1.
 * Throws std::invalid_argument for unknown names.
 */
RegimeModel load_preset(std::string_view name);

std::vector<std::string> preset_names();

}  // namespace rsput
