#include "rsput/regime_coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace rsput {

CrossLocation locate(double x, double sf_l, double sf_m, double h, int M) {
  if (!(sf_l > 0.0) || !(sf_m > 0.0))
    throw std::invalid_argument("free boundaries must be positive");
  if (!(h > 0.0) || M < 1) throw std::invalid_argument("bad grid");
  CrossLocation loc;
  loc.x = x - std::log(sf_l / sf_m);
  const double x_max = h * M;
  if (loc.x < 0.0) {
    loc.kind = CrossLocation::Kind::below;
  } else if (loc.x >= x_max) {
    loc.kind = CrossLocation::Kind::above;
  } else {
    loc.kind = CrossLocation::Kind::interior;
    loc.cell = static_cast<int>(loc.x / h);
    if (loc.cell > M - 1) loc.cell = M - 1;  // guards x*/h rounding up at the edge
    loc.offset = loc.x / h - loc.cell;
  }
  return loc;
}

FieldSample extend_exterior(const CrossLocation& location, double sf_l, double strike) {
  FieldSample s;
  switch (location.kind) {
    case CrossLocation::Kind::above:
      return s;
    case CrossLocation::Kind::below: {
      const double moneyness = std::exp(location.x) * sf_l;
      s.u = strike - moneyness;
      s.w = s.y = s.z = s.zh = -moneyness;
      return s;
    }
    case CrossLocation::Kind::interior:
      break;
  }
  throw std::invalid_argument("extend_exterior needs an exterior location");
}

HermiteCoeffs hermite_coeffs(double value_left, double value_right, double deriv_left,
                             double deriv_right, double h) {
  HermiteCoeffs c;
  const double slope = (value_right - value_left) / h;
  c.a0 = value_left;
  c.a1 = deriv_left;
  c.a2 = (slope - deriv_left) / h;
  c.a3 = ((deriv_right - slope) / h - c.a2) / h;
  return c;
}

double hermite_eval(const HermiteCoeffs& c, double s, double h) {
  return c.a0 + c.a1 * s + c.a2 * s * s + c.a3 * s * s * (s - h);
}

double hermite_eval_deriv(const HermiteCoeffs& c, double s, double h) {
  return c.a1 + 2.0 * c.a2 * s + c.a3 * (2.0 * s * (s - h) + s * s);
}

FieldSample sample(const FieldSet& fields, const CrossLocation& location, double h) {
  if (location.kind != CrossLocation::Kind::interior)
    throw std::invalid_argument("sample needs an interior location");
  const int j = location.cell;
  const double s = location.offset * h;

  const HermiteCoeffs pu =
      hermite_coeffs(fields.u[j], fields.u[j + 1], fields.w[j], fields.w[j + 1], h);
  const HermiteCoeffs py =
      hermite_coeffs(fields.y[j], fields.y[j + 1], fields.z[j], fields.z[j + 1], h);
  const HermiteCoeffs pz =
      hermite_coeffs(fields.z[j], fields.z[j + 1], fields.zh[j], fields.zh[j + 1], h);

  FieldSample out;
  out.u = hermite_eval(pu, s, h);
  out.w = hermite_eval_deriv(pu, s, h);
  out.y = hermite_eval(py, s, h);
  out.z = hermite_eval(pz, s, h);
  out.zh = hermite_eval_deriv(pz, s, h);
  return out;
}

FieldSample sample_at(const FieldSet& fields, double x, double sf_l, double sf_m, double h,
                      int M, double strike) {
  const CrossLocation loc = locate(x, sf_l, sf_m, h, M);
  if (loc.kind == CrossLocation::Kind::interior) return sample(fields, loc, h);
  return extend_exterior(loc, sf_l, strike);
}

CoupledSamples aggregate_coupled(const RegimeModel& model, int regime,
                                 const std::vector<FieldSet>& states,
                                 const std::vector<double>& sf, double h, int M) {
  CoupledSamples sums;
  sums.resize(M + 1);
  const int regimes = model.regime_count();
  for (int l = 0; l < regimes; ++l) {
    if (l == regime) continue;
    const double q_ml = model.generator[regime][l];
    if (q_ml == 0.0) continue;
    for (int i = 0; i <= M; ++i) {
      const FieldSample s = sample_at(states[l], i * h, sf[l], sf[regime], h, M, model.strike);
      sums.u[i] += q_ml * s.u;
      sums.w[i] += q_ml * s.w;
      sums.y[i] += q_ml * s.y;
      sums.z[i] += q_ml * s.z;
      sums.zh[i] += q_ml * s.zh;
    }
  }
  return sums;
}

}  // namespace rsput
