#pragma once

#include <span>
#include <vector>

#include "rsput/fields.hpp"

namespace rsput {

/**
 * Uniform discretisation of the truncated log-price domain [0, x_max] into M
 * intervals (h = x_max/M) and of [0, T] into N steps (k = T/N). Node i sits at
 * x_i = i*h; node 0 is the free boundary, node M the far-field cutoff.
 */
struct SpaceTimeGrid {
  double x_max = 0.0;
  int M = 0;
  double h = 0.0;
  int N = 0;
  double k = 0.0;
};

/** Builds a grid, checking M >= 2, N >= 1, x_max > 0, T > 0. */
SpaceTimeGrid make_grid(double x_max, int M, double maturity, int N);

/**
 * Nested grids sharing x_max and the time step. level[0] is the coarsest,
 * level[q-1] the finest; each refinement doubles M. Requires M divisible by
 * 2^(q-1). q = 1 degenerates to a single grid (plain smoothing, no cycle).
 */
struct GridHierarchy {
  std::vector<SpaceTimeGrid> level;

  int levels() const { return static_cast<int>(level.size()); }
  const SpaceTimeGrid& finest() const { return level.back(); }
  const SpaceTimeGrid& coarsest() const { return level.front(); }
};

GridHierarchy build_hierarchy(double x_max, int M, double maturity, int N, int q);

/**
 * Full-weighting restriction of a residual vector (size M+1, M even) to the
 * next coarser grid (size M/2+1). Interior coarse node i averages fine nodes
 * 2i-1, 2i, 2i+1 with weights (1, 2, 1)/4. At the left boundary the value
 * field keeps its boundary-row residual with weights (2, 1)/4 on fine nodes
 * 0, 1; the derivative fields carry Dirichlet data at node 0, so their (zero)
 * residual is injected. The right boundary is always injected.
 */
std::vector<double> restrict_residual(std::span<const double> fine, Field field);

/** Even fine nodes copy the coarse value; odd nodes average the neighbours. */
std::vector<double> prolong_linear(std::span<const double> coarse);

/**
 * Cubic interpolation to the next finer grid: even fine nodes copy, odd fine
 * nodes evaluate the Lagrange cubic through the four nearest coarse nodes
 * (one-sided at both ends). Needs at least four coarse nodes.
 */
std::vector<double> prolong_cubic(std::span<const double> coarse);

}  // namespace rsput
