#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "k3genus/modforms.hpp"

using namespace k3genus;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Pentagonal-number oracle for the eta product: prod (1 - q^n) has exponents
// k(3k-1)/2 with sign (-1)^k.
PuiseuxSeries pentagonal_oracle(const Rational& order) {
  PuiseuxSeries s(order);
  for (long long k = -60; k <= 60; ++k)
    s.add_term(Rational((k % 2 + 2) % 2 == 0 ? 1 : -1), Rational(k * (3 * k - 1), 2), 0);
  return s;
}

}  // namespace

TEST_CASE("eta series against oracles") {
  // order 2: q^(1/24) (1 - q), nothing else below
  PuiseuxSeries eta2 = eta_series(2);
  CHECK(eta2.coefficient(Rational(1, 24), 0) == 1);
  CHECK(eta2.coefficient(Rational(25, 24), 0) == -1);
  CHECK(eta2.term_count() == 2);

  // order 5: q^(1/24) (1 - q - q^2 + ...)
  PuiseuxSeries eta5 = eta_series(5);
  CHECK(eta5.coefficient(Rational(1, 24), 0) == 1);
  CHECK(eta5.coefficient(Rational(25, 24), 0) == -1);
  CHECK(eta5.coefficient(Rational(49, 24), 0) == -1);
  CHECK(eta5.coefficient(Rational(73, 24), 0) == 0);

  // pentagonal-number oracle to order 30
  PuiseuxSeries eta30 = eta_series(30);
  CHECK(eta30.agrees_below(pentagonal_oracle(30).shifted(Rational(1, 24), 0), 30));
}

TEST_CASE("theta series conventions") {
  PuiseuxSeries t3 = theta_series(3, 2);
  CHECK(t3.coefficient(0, 0) == 1);
  auto row = t3.coefficient_row(Rational(1, 2));
  CHECK(row.size() == 2);
  CHECK(row.at(1) == 1);
  CHECK(row.at(-1) == 1);
  CHECK_THROWS_AS(t3.coefficient(2, 2), Error);  // beyond order 2

  PuiseuxSeries t4 = theta_series(4, 3);
  CHECK(t4.coefficient(Rational(1, 2), 1) == -1);
  CHECK(t4.coefficient(2, 2) == 1);

  PuiseuxSeries t2_at_0 = theta_series(2, 3).with_y_one();
  CHECK(t2_at_0.coefficient(Rational(1, 8), 0) == 2);
  CHECK(t2_at_0.coefficient(Rational(9, 8), 0) == 2);
  CHECK(t2_at_0.coefficient(Rational(17, 8), 0) == 0);  // no such exponent
  CHECK_THROWS_AS(t2_at_0.coefficient(Rational(25, 8), 0), Error);  // beyond order 3

  // theta_1 vanishes at z = 0 to every order
  CHECK(theta_series(1, 12).with_y_one().is_zero());

  CHECK_THROWS_AS(theta_series(0, 2), Error);
  CHECK_THROWS_AS(theta_series(5, 2), Error);
}

TEST_CASE("triple product identity for theta_3") {
  const Rational order = 8;
  PuiseuxSeries prod = PuiseuxSeries::constant(1, order);
  for (int n = 1; n <= 8; ++n) {
    PuiseuxSeries a(order), b(order), c(order);
    a.add_term(1, 0, 0);
    a.add_term(-1, n, 0);
    b.add_term(1, 0, 0);
    b.add_term(1, Rational(2 * n - 1, 2), 1);
    c.add_term(1, 0, 0);
    c.add_term(1, Rational(2 * n - 1, 2), -1);
    prod = prod * (a * b * c);
  }
  CHECK(prod.agrees_below(theta_series(3, order), order));
}

TEST_CASE("half-period shift: spectral flow at the theta level") {
  // q^(1/8) y^(1/2) theta_3(tau, z + tau/2) = theta_2(tau, z), exactly.
  // theta_3 terms obey q-exp = (y-exp)^2/2, so the substitution
  // y -> y q^(1/2) never drops below q^0 and the full order survives.
  const Rational order = 10;
  PuiseuxSeries flowed = theta_series(3, order)
                             .with_y_times_sqrt_q(order)
                             .shifted(Rational(1, 8), Rational(1, 2));
  CHECK(flowed.agrees_below(theta_series(2, order), order));

  // y -> -y maps theta_3 to theta_4
  CHECK(theta_series(3, 8).with_y_negated() == theta_series(4, 8));
}

TEST_CASE("theta_1 oddness and prefactor bookkeeping") {
  PuiseuxSeries t1 = theta_series(1, 6);
  // odd under y -> 1/y together with the global sign
  CHECK(t1.with_y_inverted() == -t1);
  CHECK(theta1_prefactor() == std::complex<double>(0.0, -1.0));
}

TEST_CASE("numeric theta evaluation") {
  ComplexPoint at_i(std::complex<double>(0.0, 1.0), 0.0);
  CHECK(std::abs(theta_eval(1, at_i, 40)) < 1e-14);

  // theta_3(i, 0) = pi^(1/4) / Gamma(3/4)
  double expected = std::pow(kPi, 0.25) / std::tgamma(0.75);
  CHECK(std::abs(theta_eval(3, at_i, 40) - expected) < 1e-12);

  // Jacobi identity theta_2^4 + theta_4^4 = theta_3^4 at tau = i
  std::complex<double> t2 = theta_eval(2, at_i, 40);
  std::complex<double> t3 = theta_eval(3, at_i, 40);
  std::complex<double> t4 = theta_eval(4, at_i, 40);
  CHECK(std::abs(t2 * t2 * t2 * t2 + t4 * t4 * t4 * t4 - t3 * t3 * t3 * t3) < 1e-10);
}

TEST_CASE("theta_eval agrees with series_eval of theta_series") {
  for (int k = 1; k <= 4; ++k) {
    ComplexPoint p(std::complex<double>(0.2, 1.1), std::complex<double>(0.15, 0.05));
    EvalResult from_series = theta_series(k, 40).eval(p);
    std::complex<double> value = from_series.value;
    if (k == 1) value *= theta1_prefactor();
    CHECK(std::abs(value - theta_eval(k, p, 60)) < 1e-10);
  }
}

TEST_CASE("jacobi_transform_check") {
  std::vector<ComplexPoint> samples{
      ComplexPoint(std::complex<double>(0.0, 1.0), std::complex<double>(0.1, 0.0)),
      ComplexPoint(std::complex<double>(0.5, 1.0), std::complex<double>(0.3, 0.2))};

  // a constant is a weight-0 index-0 form
  JacobiCheckReport constant = jacobi_transform_check(
      [](const ComplexPoint&) { return std::complex<double>(24.0, 0.0); },
      JacobiFormSpec{0, Rational(0)}, samples, 1e-12);
  CHECK(constant.passed());
  CHECK(constant.max_deviation < 1e-14);

  // theta_3 alone is not a weight-0 index-1 Jacobi form
  JacobiCheckReport wrong = jacobi_transform_check(
      [](const ComplexPoint& p) { return theta_eval(3, p, 64); },
      JacobiFormSpec{0, Rational(1)}, samples, 1e-8);
  CHECK_FALSE(wrong.passed());

  CHECK_THROWS_AS(jacobi_transform_check(
                      [](const ComplexPoint&) { return std::complex<double>(0.0); },
                      JacobiFormSpec{0, Rational(0)}, {}, 1e-8),
                  Error);
}
