#include "nstars/gammakit.hpp"

#include <array>
#include <cmath>
#include <string>

#include "nstars/errors.hpp"

namespace nstars::gammakit {
namespace {

// Below this argument std::lgamma is used directly; above it the Stirling
// series with the terms below is accurate to well under one ulp.
constexpr double kStirlingThreshold = 10.0;

// B_{2k} / (2k (2k - 1)) for k = 1..8.
constexpr std::array<double, 8> kStirlingCoefficients = {
    1.0 / 12.0,        -1.0 / 360.0,       1.0 / 1260.0,
    -1.0 / 1680.0,     1.0 / 1188.0,       -691.0 / 360360.0,
    1.0 / 156.0,       -3617.0 / 122400.0,
};

// Tail of the Stirling series: lgamma(z) - [(z - 1/2) ln z - z + ln(2 pi)/2].
double stirling_tail(double z) {
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  double acc = 0.0;
  for (auto it = kStirlingCoefficients.rbegin();
       it != kStirlingCoefficients.rend(); ++it) {
    acc = acc * inv2 + *it;
  }
  return acc * inv;
}

}  // namespace

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    correction_ += (sum_ - t) + x;
  } else {
    correction_ += (x - t) + sum_;
  }
  sum_ = t;
}

double log_gamma_ratio(double n, double a, double b) {
  const double za = n + a;
  const double zb = n + b;
  if (!(za > 0.0) || !(zb > 0.0)) {
    throw DomainError("log_gamma_ratio requires n + a > 0 and n + b > 0 (got " +
                      std::to_string(za) + ", " + std::to_string(zb) + ")");
  }
  if (a == b) return 0.0;
  if (za < kStirlingThreshold || zb < kStirlingThreshold) {
    return std::lgamma(za) - std::lgamma(zb);
  }
  // (za - 1/2) ln za - (zb - 1/2) ln zb - (za - zb)
  //   = (zb - 1/2) log1p(d / zb) + d ln za - d,  with d = za - zb.
  const double d = a - b;
  const double lead = (zb - 0.5) * std::log1p(d / zb) + d * std::log(za) - d;
  return lead + (stirling_tail(za) - stirling_tail(zb));
}

double gamma_ratio(double n, double a, double b) {
  return std::exp(log_gamma_ratio(n, a, b));
}

double finite_gamma_sum(long n, double a, double b) {
  if (n < 0) throw DomainError("finite_gamma_sum requires n >= 0");
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("finite_gamma_sum requires a > 0 and b > 0");
  }
  const double denom = a - b + 1.0;
  if (denom == 0.0) {
    throw SingularIdentity(
        "closed-form Gamma sum is singular at a - b + 1 = 0; sum directly");
  }
  const double upper = gamma_ratio(static_cast<double>(n), a + 1.0, b);
  const double lower = (b - 1.0) * gamma_ratio(0.0, a, b);
  return (upper - lower) / denom;
}

double infinite_gamma_sum(double a, double b) {
  if (!(b > a + 1.0)) {
    throw DivergentSum("sum of Gamma(i + a) / Gamma(i + b) diverges unless b > a + 1");
  }
  if (!(a > 0.0)) throw DomainError("infinite_gamma_sum requires a > 0");
  return gamma_ratio(0.0, a, b - 1.0) / (b - a - 1.0);
}

}  // namespace nstars::gammakit
