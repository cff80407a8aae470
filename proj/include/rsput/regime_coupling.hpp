#pragma once

#include <vector>

#include "rsput/discretization.hpp"
#include "rsput/fields.hpp"
#include "rsput/model.hpp"

namespace rsput {

/**
 * Where a node of regime m lands in regime l's frame. Both frames measure
 * log-moneyness against their own free boundary, so the mapped coordinate is
 * x* = x - ln(sf_l / sf_m): a pure shift, identical for every node.
 *
 * kind == interior locates cell j (j in [0, M-1]) with fractional offset in
 * [0, 1]; offset 1 only appears when x* falls exactly on a node that the
 * half-open cell convention would push out of range. below means x* < 0 (the
 * point is inside regime l's exercise region), above means x* >= x_max.
 */
struct CrossLocation {
  enum class Kind { below, interior, above };
  Kind kind = Kind::interior;
  double x = 0.0;  // mapped coordinate x*
  int cell = 0;
  double offset = 0.0;
};

CrossLocation locate(double x, double sf_l, double sf_m, double h, int M);

struct FieldSample {
  double u = 0.0, w = 0.0, y = 0.0, z = 0.0, zh = 0.0;
};

/**
 * Values used outside regime l's computational domain: below the boundary the
 * put is exercised, so u = K - e^{x*} sf_l and every x-derivative equals
 * -e^{x*} sf_l; far above the boundary everything has decayed to zero.
 * Requires location.kind != interior.
 */
FieldSample extend_exterior(const CrossLocation& location, double sf_l, double strike);

/**
 * Newton-basis coefficients of the cubic matching value and derivative at the
 * two ends of a cell of width h: p(s) = a0 + a1 s + a2 s^2 + a3 s^2 (s - h)
 * with s measured from the left node.
 */
struct HermiteCoeffs {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
};

HermiteCoeffs hermite_coeffs(double value_left, double value_right, double deriv_left,
                             double deriv_right, double h);

double hermite_eval(const HermiteCoeffs& c, double s, double h);
double hermite_eval_deriv(const HermiteCoeffs& c, double s, double h);

/**
 * Interpolates all five fields of regime l at an interior location. Three
 * cubics enter: (u,w) supplies u and, via its derivative, w; (y,z) supplies
 * y; (z,zh) supplies z and, via its derivative, zh.
 */
FieldSample sample(const FieldSet& fields, const CrossLocation& location, double h);

/** locate + extend/sample in one call. */
FieldSample sample_at(const FieldSet& fields, double x, double sf_l, double sf_m, double h,
                      int M, double strike);

/**
 * For target regime m, accumulates sum_{l != m} q_ml * (fields of regime l
 * sampled at the mapped position of every node i). The result feeds the
 * cross-regime terms of the forces directly.
 */
CoupledSamples aggregate_coupled(const RegimeModel& model, int regime,
                                 const std::vector<FieldSet>& states,
                                 const std::vector<double>& sf, double h, int M);

}  // namespace rsput
