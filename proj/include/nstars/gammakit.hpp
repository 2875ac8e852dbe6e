#pragma once

namespace nstars::gammakit {

/// ln(Gamma(n + a) / Gamma(n + b)) without evaluating either Gamma value.
///
/// For large arguments the difference of Stirling series is formed directly
/// (with log1p for the leading term), so the result keeps full relative
/// accuracy even when both log-Gammas are around 1e8.
/// Throws DomainError unless n + a > 0 and n + b > 0.
double log_gamma_ratio(double n, double a, double b);

/// Gamma(n + a) / Gamma(n + b).
double gamma_ratio(double n, double a, double b);

/// sum_{i=0}^{n} Gamma(i + a) / Gamma(i + b) via the closed form
///   (Gamma(n + a + 1) / Gamma(n + b) - Gamma(a) / Gamma(b - 1)) / (a - b + 1).
/// Gamma(a) / Gamma(b - 1) is taken as (b - 1) Gamma(a) / Gamma(b), which is
/// finite for every b > 0 and zero at b = 1.
/// Throws SingularIdentity when a - b + 1 == 0 and DomainError when a <= 0 or
/// b <= 0.
double finite_gamma_sum(long n, double a, double b);

/// sum_{i=0}^{inf} Gamma(i + a) / Gamma(i + b) = Gamma(a) / Gamma(b - 1) / (b - a - 1).
/// Throws DivergentSum when b <= a + 1 and DomainError when a <= 0.
double infinite_gamma_sum(double a, double b);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

}  // namespace nstars::gammakit
