#pragma once

#include <span>
#include <utility>

namespace rsput {

/**
 * Geometric-mean reduction factor of a residual-norm sequence: with m = size-1
 * iterations between the first and last entries, (last/first)^(1/m).
 * Needs at least two entries and a positive first entry.
 */
double conv_factor(std::span<const double> residual_norms);

/**
 * Self-convergence errors of a refinement ladder u(h), u(h/2), u(h/4) sharing
 * x_max (sizes M+1, 2M+1, 4M+1): the max difference over co-located nodes of
 * consecutive pairs, returned as (coarse error, fine error).
 */
std::pair<double, double> error_ladder(std::span<const double> u_h,
                                       std::span<const double> u_h2,
                                       std::span<const double> u_h4);

/** Observed order log2(e_coarse / e_fine); both errors must be positive. */
double roc(double e_coarse, double e_fine);

}  // namespace rsput
