#include "rsput/stencil.hpp"

#include <stdexcept>

namespace rsput {

StencilCoeffs stencil_coeffs(double sigma, double r_minus_qmm, double h, double k,
                             double theta) {
  if (!(h > 0.0) || !(k > 0.0)) throw std::invalid_argument("h and k must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(theta >= 0.5) || !(theta <= 1.0))
    throw std::invalid_argument("theta must lie in [1/2, 1]");
  StencilCoeffs s;
  s.mu = sigma * sigma * k / (h * h);
  s.theta = theta;
  const double rq = r_minus_qmm;
  // Weights of the new and old level relative to the trapezoidal split.
  const double tn = 2.0 * theta, to = 2.0 * (1.0 - theta);

  const double pa = 5.0 / 4.0 * s.mu + 5.0 * h / 4.0 * s.mu + 7.0 * k / 8.0 * rq;
  const double pb = -5.0 / 4.0 * s.mu + 3.0 * k / 8.0 * rq;
  s.a1 = 7.0 / 4.0 + tn * pa;
  s.b1 = 3.0 / 4.0 + tn * pb;
  s.a2 = 7.0 / 4.0 - to * pa;
  s.b2 = 3.0 / 4.0 - to * pb;

  const double pc = s.mu / 2.0 + 10.0 * k / 24.0 * rq;
  const double pd = -s.mu / 4.0 + k / 24.0 * rq;
  s.c1 = 10.0 / 12.0 + tn * pc;
  s.d1 = 1.0 / 12.0 + tn * pd;
  s.c2 = 10.0 / 12.0 - to * pc;
  s.d2 = 1.0 / 12.0 - to * pd;
  return s;
}

double beta_coeff(double sf_new, double sf_old, double k, double r, double sigma) {
  if (!(sf_new > 0.0) || !(sf_old > 0.0))
    throw std::invalid_argument("free boundary must stay positive");
  const double log_derivative = 2.0 * (sf_new - sf_old) / (k * (sf_new + sf_old));
  return log_derivative + r - 0.5 * sigma * sigma;
}

}  // namespace rsput
