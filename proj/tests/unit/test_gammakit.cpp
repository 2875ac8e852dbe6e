#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "nstars/errors.hpp"
#include "nstars/gammakit.hpp"

using namespace nstars;
using namespace nstars::gammakit;

TEST_CASE("log_gamma_ratio basic values") {
  CHECK(log_gamma_ratio(0, 1, 3) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(log_gamma_ratio(0, 5, 5) == 0.0);
  CHECK(log_gamma_ratio(7, 2.5, 2.5) == 0.0);
  CHECK_THROWS_AS(log_gamma_ratio(0, 0, 1), DomainError);
  CHECK_THROWS_AS(log_gamma_ratio(0, 1, -2), DomainError);
}

TEST_CASE("log_gamma_ratio matches lgammal across the Stirling threshold") {
  for (double n : {0.0, 3.0, 9.0, 9.5, 10.0, 11.0, 50.0, 1000.0}) {
    for (double a : {0.3, 1.0, 2.75}) {
      for (double b : {0.9, 1.2, 4.0}) {
        const long double ref = std::lgamma(static_cast<long double>(n) + a) -
                                std::lgamma(static_cast<long double>(n) + b);
        const double got = log_gamma_ratio(n, a, b);
        CHECK(std::fabs(got - static_cast<double>(ref)) <=
              1e-13 * std::max(1.0, std::fabs(static_cast<double>(ref))));
      }
    }
  }
}

TEST_CASE("log_gamma_ratio at large n against 40-digit references") {
  struct Ref {
    double n, a, b, value;
  };
  const Ref refs[] = {{123456, 0.3, 0.9, -7.0341845437632043108},
                      {123456, 1, 0.9, 1.1723643741284789827},
                      {123456, 1, 4, -35.170968888647975295},
                      {123456, 2.75, 1.2, 18.171660667838322993},
                      {1e7, 0.3, 0.9, -9.6708573965749925397},
                      {1e7, 1, 0.9, 1.6118095695958315609},
                      {1e7, 1, 4, -48.354287552874889364},
                      {1e7, 2.75, 1.2, 24.983048487610378621}};
  for (const auto& r : refs) {
    CHECK(std::fabs(log_gamma_ratio(r.n, r.a, r.b) - r.value) <= 1e-14 * std::fabs(r.value) + 1e-15);
  }
}

TEST_CASE("log_gamma_ratio large-n asymptotics") {
  const double n = 1e6;
  const double scaled = std::exp(log_gamma_ratio(n, 0.3, 1.2)) * std::pow(n, 1.2 - 0.3);
  CHECK(std::fabs(scaled - 1.0) < 1e-5);
  for (double m : {1e3, 1e5, 1e7}) {
    CHECK(std::fabs(log_gamma_ratio(m, 0.3, 1.2) + 0.9 * std::log(m)) < 1.0 / m);
  }
}

TEST_CASE("finite_gamma_sum examples") {
  CHECK(finite_gamma_sum(1, 2, 4) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(finite_gamma_sum(0, 2, 2) == doctest::Approx(1.0).epsilon(1e-15));
  const double ref = static_cast<double>(oracle::direct_gamma_sum(50, 0.9, 3.1));
  CHECK(oracle::relative_error(finite_gamma_sum(50, 0.9, 3.1), ref) <= 1e-12);
  CHECK_THROWS_AS(finite_gamma_sum(5, 2.0, 3.0), SingularIdentity);
  CHECK_THROWS_AS(finite_gamma_sum(5, -0.5, 3.0), DomainError);
}

TEST_CASE("finite_gamma_sum agrees with direct summation on random triples") {
  double worst = 0.0;
  for (const auto& t : oracle::finite_sum_triples(200, 20240607)) {
    const double ref = static_cast<double>(oracle::direct_gamma_sum(t.n, t.a, t.b));
    worst = std::max(worst, oracle::relative_error(finite_gamma_sum(t.n, t.a, t.b), ref));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("infinite_gamma_sum") {
  CHECK(infinite_gamma_sum(1, 3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(infinite_gamma_sum(2, 2.5), DivergentSum);
  CHECK_THROWS_AS(infinite_gamma_sum(2, 3), DivergentSum);
  const double ref = static_cast<double>(oracle::truncated_infinite_gamma_sum(1.5, 4, 1000000));
  CHECK(oracle::relative_error(infinite_gamma_sum(1.5, 4), ref) <= 1e-6);
  for (const auto& t : oracle::infinite_sum_pairs(50, 99)) {
    const double r = static_cast<double>(oracle::truncated_infinite_gamma_sum(t.a, t.b, 20000));
    CHECK(oracle::relative_error(infinite_gamma_sum(t.a, t.b), r) <= 1e-6);
  }
}

TEST_CASE("partial sums increase toward the infinite sum") {
  const double a = 0.7;
  const double b = 3.2;
  const double limit = infinite_gamma_sum(a, b);
  double previous = 0.0;
  for (long n : {0L, 1L, 10L, 100L, 1000L, 100000L}) {
    const double s = finite_gamma_sum(n, a, b);
    CHECK(s > previous);
    CHECK(s < limit);
    previous = s;
  }
  CHECK(oracle::relative_error(previous, limit) < 1e-6);
}

TEST_CASE("compensated sum recovers small addends") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-10));
}
