#include "rsput/smoother.hpp"

#include <cmath>
#include <stdexcept>

namespace rsput {

SweepOutcome gs_sweep(Field field, std::span<double> values, std::span<const double> force,
                      const StencilCoeffs& coeffs) {
  const int M = static_cast<int>(values.size()) - 1;
  if (M < 3) throw std::invalid_argument("need at least M = 3 intervals");
  if (values.size() != force.size())
    throw std::invalid_argument("values and force must share size");
  if (coeffs.c1 == 0.0 || (field == Field::value && coeffs.a1 == 0.0))
    throw std::invalid_argument("zero diagonal in smoother");

  SweepOutcome out;
  const double c1 = coeffs.c1, d1 = coeffs.d1;
  double* v = values.data();
  const double* f = force.data();

  int first = 2;
  if (field == Field::value) {
    const double u0 = (f[0] - coeffs.b1 * v[1]) / coeffs.a1;
    out.max_update = std::abs(u0 - v[0]);
    v[0] = u0;
    first = 1;
  } else {
    const double v1 = (f[1] - d1 * v[2]) / c1;
    out.max_update = std::abs(v1 - v[1]);
    v[1] = v1;
  }
  for (int i = first; i < M; ++i) {
    const double vi = (f[i] - d1 * (v[i - 1] + v[i + 1])) / c1;
    const double change = std::abs(vi - v[i]);
    if (change > out.max_update) out.max_update = change;
    v[i] = vi;
  }
  return out;
}

SweepOutcome relax(Field field, std::span<double> values, std::span<const double> force,
                   const StencilCoeffs& coeffs, int count) {
  if (count < 0) throw std::invalid_argument("sweep count must be non-negative");
  SweepOutcome out;
  for (int n = 0; n < count; ++n) out = gs_sweep(field, values, force, coeffs);
  return out;
}

}  // namespace rsput
