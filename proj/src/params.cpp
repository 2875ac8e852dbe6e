#include "nstars/params.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "nstars/errors.hpp"

namespace nstars {
namespace {

bool in_closed_unit(double v) { return v >= 0.0 && v <= 1.0; }
bool in_open_unit(double v) { return v > 0.0 && v < 1.0; }

void check_star_size(int N) {
  if (N < 3) {
    throw InvalidParams("star size N must be at least 3, got " +
                        std::to_string(N));
  }
}

}  // namespace

void validate_for_simulation(const ModelParams& params) {
  check_star_size(params.N);
  if (!(params.p > 0.0 && params.p <= 1.0)) {
    throw InvalidParams("p must satisfy 0 < p <= 1");
  }
  if (!in_closed_unit(params.q)) throw InvalidParams("q must lie in [0, 1]");
  if (!in_closed_unit(params.r)) throw InvalidParams("r must lie in [0, 1]");
}

void validate_for_analytic(const ModelParams& params) {
  check_star_size(params.N);
  if (!in_open_unit(params.p) || !in_open_unit(params.q) ||
      !in_open_unit(params.r)) {
    throw InvalidParams(
        "limit formulas require p, q and r in the open interval (0, 1)");
  }
}

DerivedParams derive(const ModelParams& params) {
  validate_for_simulation(params);
  const double p = params.p;
  const double q = params.q;
  const double r = params.r;
  const double n = params.N;

  DerivedParams d;
  d.a11 = p * r;
  d.a12 = (1.0 - p) * q;
  d.a1 = d.a11 + d.a12;
  d.a2 = p * r * (n - 2.0) / (n - 1.0) + (1.0 - p) * q;
  d.b1 = (1.0 - p) * (1.0 - q) / p;
  d.b2 = (n - 1.0) * ((1.0 - r) + d.b1);
  d.a = d.a1 + d.a2;
  d.b = d.b1 + d.b2;
  d.r_center = r;
  d.r_peripheral = 1.0 - r;
  return d;
}

ConditionReport check_conditions(const DerivedParams& d) {
  ConditionReport c;
  c.e_finite = d.b1 + 1.0 > d.a2;
  c.m_finite = d.b1 + 1.0 > 2.0 * d.a2;
  c.m_finite_swapped = d.b2 + 1.0 > 2.0 * d.a1;
  c.e_exponent = d.a2 / d.a1;
  c.m_exponent = 2.0 * d.a2 / d.a1;
  return c;
}

DerivedParams swap_roles(const DerivedParams& d) {
  DerivedParams s = d;
  std::swap(s.a1, s.a2);
  std::swap(s.b1, s.b2);
  std::swap(s.r_center, s.r_peripheral);
  s.swapped = !d.swapped;
  return s;
}

}  // namespace nstars
