#pragma once

#include "rsput/solver.hpp"

namespace rsput {

/**
 * Readout at one asset price. Log-space derivatives come straight from the
 * interpolated fields; the price-space Greeks apply the chain rule for
 * x = ln(S / s_f): dV/dS = W/S, d2V/dS2 = (Y - W)/S^2,
 * d3V/dS3 = (Z - 3Y + 2W)/S^3.
 */
struct SpotQuote {
  double price = 0.0;
  double delta_x = 0.0, gamma_x = 0.0, speed_x = 0.0;  // W, Y, Z at the spot
  double theta = 0.0;                                  // dU/dtau at the spot
  double delta = 0.0, gamma = 0.0, speed = 0.0;        // price-space Greeks
  bool exercised = false;
};

/**
 * Prices regime `regime` at asset price S from the arrays at tau = T.
 * S <= s_f(T) is the exercised region (intrinsic value, derivatives -S);
 * beyond the truncated domain everything is zero. In between the value and
 * Greeks come from the same piecewise cubics used for regime coupling; theta
 * uses the (theta, kappa) pair. Requires a converged solution and S > 0.
 */
SpotQuote price_at_spot(const Solution& solution, int regime, double S);

}  // namespace rsput
