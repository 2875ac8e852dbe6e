#pragma once

#include <cstdint>

namespace nstars {

/// Raw model inputs: star size and the three branch probabilities.
struct ModelParams {
  int N = 4;
  double p = 0.4;
  double q = 0.4;
  double r = 0.4;
};

/// Constants derived from ModelParams that appear in every limit formula.
///
/// `r_center` and `r_peripheral` are the probabilities that a newborn vertex
/// joins as a peripheral (r) or as a center (1 - r). Both are stored so that
/// swap_roles() is an exact involution.
struct DerivedParams {
  double a11 = 0;
  double a12 = 0;
  double a1 = 0;
  double a2 = 0;
  double b1 = 0;
  double b2 = 0;
  double a = 0;
  double b = 0;
  double r_center = 0;      // r in the unswapped view
  double r_peripheral = 0;  // 1 - r in the unswapped view
  bool swapped = false;     // true when indices 1 and 2 are interchanged
};

struct ConditionReport {
  bool e_finite = false;          // b1 + 1 > a2
  bool m_finite = false;          // b1 + 1 > 2 a2
  bool m_finite_swapped = false;  // b2 + 1 > 2 a1
  double e_exponent = 0;          // a2 / a1
  double m_exponent = 0;          // 2 a2 / a1
};

/// Checks the domain accepted by the simulator: N >= 3, 0 < p <= 1,
/// q and r in [0, 1]. Throws InvalidParams.
void validate_for_simulation(const ModelParams& params);

/// Checks the stricter domain of the limit formulas: N >= 3 and p, q, r all
/// in the open interval (0, 1). Throws InvalidParams.
void validate_for_analytic(const ModelParams& params);

/// Throws InvalidParams if N < 3 or p == 0 (b1 undefined), or if any
/// probability lies outside [0, 1].
DerivedParams derive(const ModelParams& params);

ConditionReport check_conditions(const DerivedParams& d);

/// Interchanges the roles of central and peripheral weight: a1 <-> a2,
/// b1 <-> b2, r <-> 1 - r. Applying it twice returns the input bit-exactly.
DerivedParams swap_roles(const DerivedParams& d);

}  // namespace nstars
