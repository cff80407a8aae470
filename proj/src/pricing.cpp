#include "rsput/pricing.hpp"

#include <cmath>
#include <stdexcept>

#include "rsput/regime_coupling.hpp"

namespace rsput {

SpotQuote price_at_spot(const Solution& solution, int regime, double S) {
  if (!solution.converged) throw std::runtime_error("solution did not converge");
  if (regime < 0 || regime >= solution.model.regime_count())
    throw std::invalid_argument("regime out of range");
  if (!(S > 0.0)) throw std::invalid_argument("spot must be positive");

  const double strike = solution.model.strike;
  const double sf = solution.boundary[regime].back();
  const FieldSet& fields = solution.fields[regime];
  const TimeGreeks& greeks = solution.greeks[regime];
  const SpaceTimeGrid& grid = solution.grid;

  SpotQuote quote;
  if (S <= sf) {
    quote.exercised = true;
    quote.price = strike - S;
    quote.delta_x = quote.gamma_x = quote.speed_x = -S;
  } else {
    const double x = std::log(S / sf);
    if (x >= grid.x_max) return quote;  // beyond truncation: value and Greeks ~ 0
    CrossLocation loc;
    loc.kind = CrossLocation::Kind::interior;
    loc.x = x;
    loc.cell = std::min(static_cast<int>(x / grid.h), grid.M - 1);
    loc.offset = x / grid.h - loc.cell;
    const FieldSample s = sample(fields, loc, grid.h);
    quote.price = s.u;
    quote.delta_x = s.w;
    quote.gamma_x = s.y;
    quote.speed_x = s.z;
    const int j = loc.cell;
    const HermiteCoeffs pt = hermite_coeffs(greeks.theta[j], greeks.theta[j + 1],
                                            greeks.kappa[j], greeks.kappa[j + 1], grid.h);
    quote.theta = hermite_eval(pt, loc.offset * grid.h, grid.h);
  }
  quote.delta = quote.delta_x / S;
  quote.gamma = (quote.gamma_x - quote.delta_x) / (S * S);
  quote.speed = (quote.speed_x - 3.0 * quote.gamma_x + 2.0 * quote.delta_x) / (S * S * S);
  return quote;
}

}  // namespace rsput
