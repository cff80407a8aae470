#pragma once

#include <array>
#include <string_view>
#include <vector>

namespace rsput {

// The five coupled unknowns carried per regime on the log-price grid.
// `value` is the transformed option value u; `delta`, `gamma`, `speed` are its
// first three x-derivatives w, y, z; `speed_deriv` is the auxiliary fourth
// derivative zhat needed to interpolate speed between regimes.
enum class Field { value, delta, gamma, speed, speed_deriv };

inline constexpr std::array<Field, 5> kAllFields = {
    Field::value, Field::delta, Field::gamma, Field::speed, Field::speed_deriv};

inline constexpr std::size_t field_index(Field f) { return static_cast<std::size_t>(f); }

std::string_view field_name(Field f);

// Nodal arrays for one regime, each sized M+1 (nodes 0..M).
struct FieldSet {
  std::vector<double> u, w, y, z, zh;

  void resize(int node_count, double fill = 0.0);
  std::vector<double>& operator[](Field f);
  const std::vector<double>& operator[](Field f) const;
};

}  // namespace rsput
