#include "rsput/discretization.hpp"

#include <cmath>
#include <stdexcept>

namespace rsput {

namespace {

// Each derivative field is the x-derivative of the field one step up the
// chain, so its own first derivative is the parent's second derivative.
Field parent_field(Field f) {
  switch (f) {
    case Field::delta: return Field::value;
    case Field::gamma: return Field::delta;
    case Field::speed: return Field::gamma;
    case Field::speed_deriv: return Field::speed;
    case Field::value: break;
  }
  throw std::logic_error("the value field has no parent");
}

void check_sizes(std::size_t n, const FieldSet& a, const FieldSet& b, const FieldSet& c,
                 const FieldSet& d) {
  for (const FieldSet* fs : {&a, &b, &c, &d})
    for (Field f : kAllFields)
      if ((*fs)[f].size() != n) throw std::invalid_argument("field arrays must share size M+1");
}

}  // namespace

RegimeDiscretization make_discretization(const RegimeModel& model, int regime, double h,
                                         double k, double beta, double theta) {
  RegimeDiscretization d;
  d.sigma = model.sigma[regime];
  d.r_minus_qmm = model.rate[regime] - model.generator[regime][regime];
  d.coeffs = stencil_coeffs(d.sigma, d.r_minus_qmm, h, k, theta);
  d.beta = beta;
  d.h = h;
  d.k = k;
  d.strike = model.strike;
  return d;
}

std::vector<double> assemble_rhs(Field field, const RegimeDiscretization& d,
                                 const FieldSet& old_state, const FieldSet& iterate,
                                 const CoupledSamples& qs_old, const CoupledSamples& qs_new) {
  const std::size_t n = old_state.u.size();
  if (n < 4) throw std::invalid_argument("need at least M = 3 intervals");
  check_sizes(n, old_state, iterate, qs_old, qs_new);
  const int M = static_cast<int>(n) - 1;

  const StencilCoeffs& s = d.coeffs;
  const double h = d.h, k = d.k, beta = d.beta;
  std::vector<double> f(n, 0.0);

  // Weighted two-level sum of a field; reduces to the plain sum at theta=1/2.
  const double tn = 2.0 * s.theta, to = 2.0 * (1.0 - s.theta);
  const auto S = [&](const std::vector<double>& now, const std::vector<double>& old, int i) {
    return tn * now[i] + to * old[i];
  };

  if (field == Field::value) {
    const auto& uo = old_state.u;
    const auto& wn = iterate.w;
    const auto& wo = old_state.w;
    const auto& yn = iterate.y;
    const auto& yo = old_state.y;
    const double sig2 = d.sigma * d.sigma;
    const double rq = d.r_minus_qmm;

    const double sw0 = S(wn, wo, 0), sw1 = S(wn, wo, 1), sw2 = S(wn, wo, 2);
    f[0] = s.a2 * uo[0] + s.b2 * uo[1]
         + 2.5 * sig2 * k / h * d.strike
         - 0.75 * sig2 * k / h * (sw0 - 2.0 * sw1 + sw2)
         + h / 12.0 * (32.0 * (wn[1] - wo[1]) + 3.0 * (wn[2] - wo[2]))
         + h * k * rq / 24.0 * (32.0 * sw1 + 3.0 * sw2)
         + k * beta / 8.0 * (7.0 * sw0 + 3.0 * sw1)
         - h * k * beta / 24.0 * (32.0 * S(yn, yo, 1) + 3.0 * S(yn, yo, 2))
         - h * k / 24.0 * (32.0 * S(qs_new.w, qs_old.w, 1) + 3.0 * S(qs_new.w, qs_old.w, 2))
         + k / 8.0 * (7.0 * S(qs_new.u, qs_old.u, 0) + 3.0 * S(qs_new.u, qs_old.u, 1));

    for (int i = 1; i < M; ++i) {
      f[i] = s.d2 * uo[i - 1] + s.c2 * uo[i] + s.d2 * uo[i + 1]
           + k * beta / 24.0 *
                 (S(wn, wo, i - 1) + 10.0 * S(wn, wo, i) + S(wn, wo, i + 1))
           + k / 24.0 *
                 (S(qs_new.u, qs_old.u, i - 1) + 10.0 * S(qs_new.u, qs_old.u, i) +
                  S(qs_new.u, qs_old.u, i + 1));
    }
    return f;
  }

  const auto& gn = iterate[field];
  const auto& go = old_state[field];
  const auto& qn = qs_new[field];
  const auto& qo = qs_old[field];

  // beta * g_x with g_x written through the parent (g = p_x, so g_x = p_xx):
  // under the compact prefactor, (1 + delta^2/12) g_x = delta^2 p / h^2 + O(h^4),
  // a plain second difference. Reading the parent here is what anchors every
  // derivative field to the value and keeps the chain from drifting apart.
  const Field parent = parent_field(field);
  const auto& pn = iterate[parent];
  const auto& po = old_state[parent];
  const double curv = k * beta / (2.0 * h * h);
  for (int i = 1; i < M; ++i) {
    f[i] = s.d2 * go[i - 1] + s.c2 * go[i] + s.d2 * go[i + 1]
         + curv * (S(pn, po, i - 1) - 2.0 * S(pn, po, i) + S(pn, po, i + 1))
         + k / 24.0 * (S(qn, qo, i - 1) + 10.0 * S(qn, qo, i) + S(qn, qo, i + 1));
  }
  f[1] -= s.d1 * gn[0];  // node-0 Dirichlet value of the new level
  return f;
}

ForceSet assemble_forces(const RegimeDiscretization& d, const FieldSet& old_state,
                         const FieldSet& iterate, const CoupledSamples& qs_old,
                         const CoupledSamples& qs_new) {
  ForceSet forces;
  for (Field f : kAllFields)
    forces[f] = assemble_rhs(f, d, old_state, iterate, qs_old, qs_new);
  return forces;
}

std::vector<double> apply_lhs(Field field, std::span<const double> values,
                              const StencilCoeffs& s) {
  const int M = static_cast<int>(values.size()) - 1;
  if (M < 3) throw std::invalid_argument("need at least M = 3 intervals");
  std::vector<double> image(values.size(), 0.0);
  const int first = field == Field::value ? 1 : 2;
  if (field == Field::value) image[0] = s.a1 * values[0] + s.b1 * values[1];
  if (field != Field::value) image[1] = s.c1 * values[1] + s.d1 * values[2];
  for (int i = first; i < M; ++i)
    image[i] = s.d1 * values[i - 1] + s.c1 * values[i] + s.d1 * values[i + 1];
  return image;
}

std::vector<double> residual(Field field, std::span<const double> values,
                             std::span<const double> force, const StencilCoeffs& coeffs) {
  if (values.size() != force.size())
    throw std::invalid_argument("values and force must share size");
  std::vector<double> r = apply_lhs(field, values, coeffs);
  const int M = static_cast<int>(values.size()) - 1;
  const int first = field == Field::value ? 0 : 1;
  for (int i = 0; i < first; ++i) r[i] = 0.0;
  for (int i = first; i < M; ++i) r[i] = force[i] - r[i];
  r[M] = 0.0;
  return r;
}

double norm_l2(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

}  // namespace rsput
