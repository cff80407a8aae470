#pragma once

namespace rsput {

/**
 * Row coefficients of the compact one-step scheme for one regime on one grid
 * level, after multiplying the equation by the time step k.
 *
 * Interior rows couple three nodes: [d1, c1, d1] acts on the new time level,
 * [d2, c2, d2] weights the old one. The value field's node-0 row comes from a
 * one-sided fourth-order boundary identity and couples nodes 0 and 1 with
 * (a1, b1) new / (a2, b2) old. mu = sigma^2 k / h^2.
 *
 * theta is the implicitness weight of the time average: 1/2 is the
 * trapezoidal scheme, 1 is fully implicit. At theta = 1/2 the pairs satisfy
 * a1+a2 = 7/2, b1+b2 = 3/2, c1+c2 = 5/3, d1+d2 = 1/6 identically, since the
 * average then splits the constant compact weights evenly.
 */
struct StencilCoeffs {
  double mu;
  double theta;
  double a1, b1, a2, b2;
  double c1, d1, c2, d2;
};

/**
 * r_minus_qmm is the regime's discount rate minus the generator diagonal
 * (a non-negative combination since q_mm <= 0). theta must lie in [1/2, 1].
 */
StencilCoeffs stencil_coeffs(double sigma, double r_minus_qmm, double h, double k,
                             double theta = 0.5);

/**
 * Drift coefficient of the transformed equation at the half time level:
 * the discrete logarithmic derivative of the free boundary plus r - sigma^2/2.
 * Throws std::invalid_argument unless both boundary values are positive.
 */
double beta_coeff(double sf_new, double sf_old, double k, double r, double sigma);

}  // namespace rsput
