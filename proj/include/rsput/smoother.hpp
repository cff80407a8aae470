#pragma once

#include <span>

#include "rsput/fields.hpp"
#include "rsput/stencil.hpp"

namespace rsput {

struct SweepOutcome {
  double max_update = 0.0;  // largest |change| over the sweep, for diagnostics
};

/**
 * One pointwise Gauss-Seidel pass in ascending node order, reading
 * already-updated left neighbours. The value field updates node 0 first from
 * its boundary row, then nodes 1..M-1; derivative fields update 1..M-1 with
 * the node-0 term folded into force[1] (node 0 itself is untouched). Node M
 * stays at its Dirichlet zero. Throws on a zero diagonal.
 */
SweepOutcome gs_sweep(Field field, std::span<double> values, std::span<const double> force,
                      const StencilCoeffs& coeffs);

/** `count` consecutive sweeps; returns the last sweep's outcome. */
SweepOutcome relax(Field field, std::span<double> values, std::span<const double> force,
                   const StencilCoeffs& coeffs, int count);

}  // namespace rsput
