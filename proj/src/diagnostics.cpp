#include "rsput/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace rsput {

double conv_factor(std::span<const double> residual_norms) {
  if (residual_norms.size() < 2)
    throw std::invalid_argument("need at least two residual norms");
  const double first = residual_norms.front();
  const double last = residual_norms.back();
  if (!(first > 0.0)) throw std::invalid_argument("first residual norm must be positive");
  if (last < 0.0) throw std::invalid_argument("residual norms must be non-negative");
  const double m = static_cast<double>(residual_norms.size() - 1);
  return std::pow(last / first, 1.0 / m);
}

namespace {

double colocated_max_diff(std::span<const double> coarse, std::span<const double> fine) {
  if (fine.size() != 2 * coarse.size() - 1)
    throw std::invalid_argument("not a refinement pair: sizes must be M+1 and 2M+1");
  double e = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i)
    e = std::max(e, std::abs(coarse[i] - fine[2 * i]));
  return e;
}

}  // namespace

std::pair<double, double> error_ladder(std::span<const double> u_h,
                                       std::span<const double> u_h2,
                                       std::span<const double> u_h4) {
  return {colocated_max_diff(u_h, u_h2), colocated_max_diff(u_h2, u_h4)};
}

double roc(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0))
    throw std::invalid_argument("errors must be positive");
  return std::log2(e_coarse / e_fine);
}

}  // namespace rsput
