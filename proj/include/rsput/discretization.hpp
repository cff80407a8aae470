#pragma once

#include <span>
#include <vector>

#include "rsput/fields.hpp"
#include "rsput/model.hpp"
#include "rsput/stencil.hpp"

namespace rsput {

// Per-node sums over the other regimes, q_ml-weighted, of their fields
// interpolated at the mapped locations of this regime's nodes. One set per
// time level enters the forces.
using CoupledSamples = FieldSet;

// Right-hand sides of the five linear systems of one regime for one time
// step. Entries follow node indexing: value rows live at 0..M-1 (row 0 is the
// boundary row), derivative rows at 1..M-1 with the node-0 Dirichlet value
// already folded into entry 1. Unused entries are zero.
using ForceSet = FieldSet;

/** Everything the row assembly needs to know about one regime on one level. */
struct RegimeDiscretization {
  StencilCoeffs coeffs;
  double sigma = 0.0;
  double r_minus_qmm = 0.0;
  double beta = 0.0;
  double h = 0.0;
  double k = 0.0;
  double strike = 0.0;
};

RegimeDiscretization make_discretization(const RegimeModel& model, int regime, double h,
                                         double k, double beta, double theta = 0.5);

/**
 * Assembles the force vector of one field from the old-level state, the
 * current new-level iterate, and the two cross-regime sample sets. The moving
 * frame advects the value by the delta field directly; each derivative field
 * is advected by the second difference of the field one step up the chain
 * (u for w, w for y, ...), which is its own first derivative expressed
 * through the parent. That curvature coupling is what ties every field to
 * the value and keeps the chain of derivative identities from drifting
 * apart. These couplings and the cross-regime sums are read from the given
 * snapshots; callers refresh them between sweeps or outer iterations.
 * Arrays must share the size M+1, M >= 3.
 */
std::vector<double> assemble_rhs(Field field, const RegimeDiscretization& d,
                                 const FieldSet& old_state, const FieldSet& iterate,
                                 const CoupledSamples& qs_old, const CoupledSamples& qs_new);

ForceSet assemble_forces(const RegimeDiscretization& d, const FieldSet& old_state,
                         const FieldSet& iterate, const CoupledSamples& qs_old,
                         const CoupledSamples& qs_new);

/**
 * Applies the new-level operator row by row: for the value field the node-0
 * boundary row (a1, b1) plus interior rows [d1, c1, d1]; for derivative
 * fields interior rows only (their node 0 is Dirichlet data and lives in the
 * force). values[M] must hold the far-field Dirichlet zero. Entries outside
 * the system rows are zero in the returned vector.
 */
std::vector<double> apply_lhs(Field field, std::span<const double> values,
                              const StencilCoeffs& coeffs);

/** force - apply_lhs over the system rows of the field, zero elsewhere. */
std::vector<double> residual(Field field, std::span<const double> values,
                             std::span<const double> force, const StencilCoeffs& coeffs);

double norm_l2(std::span<const double> v);

}  // namespace rsput
