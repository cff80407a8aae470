#include "rsput/grid.hpp"

#include <stdexcept>
#include <string>

namespace rsput {

std::string_view field_name(Field f) {
  switch (f) {
    case Field::value: return "u";
    case Field::delta: return "w";
    case Field::gamma: return "y";
    case Field::speed: return "z";
    case Field::speed_deriv: return "zhat";
  }
  return "?";
}

void FieldSet::resize(int node_count, double fill) {
  u.assign(node_count, fill);
  w.assign(node_count, fill);
  y.assign(node_count, fill);
  z.assign(node_count, fill);
  zh.assign(node_count, fill);
}

std::vector<double>& FieldSet::operator[](Field f) {
  switch (f) {
    case Field::value: return u;
    case Field::delta: return w;
    case Field::gamma: return y;
    case Field::speed: return z;
    case Field::speed_deriv: break;
  }
  return zh;
}

const std::vector<double>& FieldSet::operator[](Field f) const {
  return const_cast<FieldSet&>(*this)[f];
}

SpaceTimeGrid make_grid(double x_max, int M, double maturity, int N) {
  if (!(x_max > 0.0)) throw std::invalid_argument("x_max must be positive");
  if (M < 2) throw std::invalid_argument("M must be at least 2");
  if (!(maturity > 0.0)) throw std::invalid_argument("maturity must be positive");
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  SpaceTimeGrid g;
  g.x_max = x_max;
  g.M = M;
  g.h = x_max / M;
  g.N = N;
  g.k = maturity / N;
  return g;
}

GridHierarchy build_hierarchy(double x_max, int M, double maturity, int N, int q) {
  if (q < 1) throw std::invalid_argument("hierarchy needs at least one level");
  int scale = 1;
  for (int i = 1; i < q; ++i) scale *= 2;
  if (M % scale != 0)
    throw std::invalid_argument("M = " + std::to_string(M) + " is not divisible by 2^(q-1) = " +
                                std::to_string(scale));
  GridHierarchy hierarchy;
  hierarchy.level.reserve(q);
  for (int i = 0; i < q; ++i, scale /= 2) hierarchy.level.push_back(make_grid(x_max, M / scale, maturity, N));
  return hierarchy;
}

std::vector<double> restrict_residual(std::span<const double> fine, Field field) {
  const int M = static_cast<int>(fine.size()) - 1;
  if (M < 2 || M % 2 != 0) throw std::invalid_argument("restriction needs an even interval count");
  const int Mc = M / 2;
  std::vector<double> coarse(Mc + 1);
  coarse[0] = field == Field::value ? (2.0 * fine[0] + fine[1]) / 4.0 : fine[0];
  for (int i = 1; i < Mc; ++i)
    coarse[i] = (fine[2 * i - 1] + 2.0 * fine[2 * i] + fine[2 * i + 1]) / 4.0;
  coarse[Mc] = fine[M];
  return coarse;
}

std::vector<double> prolong_linear(std::span<const double> coarse) {
  const int Mc = static_cast<int>(coarse.size()) - 1;
  if (Mc < 1) throw std::invalid_argument("prolongation needs at least two nodes");
  std::vector<double> fine(2 * Mc + 1);
  for (int i = 0; i < Mc; ++i) {
    fine[2 * i] = coarse[i];
    fine[2 * i + 1] = 0.5 * (coarse[i] + coarse[i + 1]);
  }
  fine[2 * Mc] = coarse[Mc];
  return fine;
}

std::vector<double> prolong_cubic(std::span<const double> coarse) {
  const int Mc = static_cast<int>(coarse.size()) - 1;
  if (Mc < 3) throw std::invalid_argument("cubic prolongation needs at least four nodes");
  std::vector<double> fine(2 * Mc + 1);
  for (int i = 0; i < Mc; ++i) {
    fine[2 * i] = coarse[i];
    // Four-node stencil around the midpoint of cell i, shifted one-sided at
    // the ends; Lagrange weights at the half-point.
    int base = i - 1;
    if (base < 0) base = 0;
    if (base > Mc - 3) base = Mc - 3;
    const double t = (i - base) + 0.5;  // midpoint in stencil-local units
    double v = 0.0;
    for (int j = 0; j < 4; ++j) {
      double weight = 1.0;
      for (int l = 0; l < 4; ++l)
        if (l != j) weight *= (t - l) / (j - l);
      v += weight * coarse[base + j];
    }
    fine[2 * i + 1] = v;
  }
  fine[2 * Mc] = coarse[Mc];
  return fine;
}

}  // namespace rsput
