#pragma once

#include "oracles.hpp"
#include "otm/field.hpp"
#include "otm/units.hpp"

namespace fixtures {

// x^3 - x - 1, signature (1, 1).
inline const otm::NumberField& cubic() {
  static const otm::NumberField field(otm::validate_polynomial({-1, -1, 0, 1}));
  return field;
}

// x^4 - x - 1, signature (2, 1).
inline const otm::NumberField& quartic() {
  static const otm::NumberField field(otm::validate_polynomial({-1, -1, 0, 0, 1}));
  return field;
}

inline std::vector<otm::Unit> cubic_generators() {
  return {otm::make_unit(cubic().generator(), cubic())};
}

inline std::vector<otm::Unit> quartic_generators() {
  static const auto gens = otm::select_generators(otm::search_units(quartic(), 5), quartic());
  return gens;
}

// Real root of x^3 - x - 1 by bisection on [1, 2].
inline double cubic_real_root() {
  return oracle::bisect([](double x) { return x * x * x - x - 1; }, 1.0, 2.0);
}

}  // namespace fixtures
