#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "k3genus/modforms.hpp"
#include "k3genus/puiseux.hpp"

using namespace k3genus;

namespace {

PuiseuxSeries random_series(std::mt19937& rng) {
  std::uniform_int_distribution<int> term_count(0, 5);
  std::uniform_int_distribution<long long> q24(-12, 36);
  std::uniform_int_distribution<long long> y2(-4, 4);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  PuiseuxSeries s(3);
  int n = term_count(rng);
  for (int i = 0; i < n; ++i)
    s.add_term_units(Rational(num(rng), den(rng)), q24(rng), y2(rng));
  return s;
}

// Brute-force polynomial product oracle on dense (q24, y2) tables.
PuiseuxSeries oracle_mul(const PuiseuxSeries& a, const PuiseuxSeries& b,
                         const Rational& order) {
  PuiseuxSeries r(order);
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms())
      r.add_term_units(ca * cb, ea.q24 + eb.q24, ea.y2 + eb.y2);
  return r;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("5") == Rational(5));
  CHECK(frac_string(Rational(5)) == "5/1");
  CHECK(plain_string(Rational(5)) == "5");
  CHECK(plain_string(Rational(-1, 2)) == "-1/2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK(ceil_sqrt_rational(Rational(15)) == 4);
  CHECK(ceil_sqrt_rational(Rational(16)) == 4);
  CHECK(ceil_sqrt_rational(Rational(1, 4)) == 1);
  CHECK(isqrt_floor(Integer(99)) == 9);
  CHECK(isqrt_floor(Integer(100)) == 10);
}

TEST_CASE("additive identities") {
  // (1) + (-1) is the zero series
  PuiseuxSeries one = PuiseuxSeries::constant(1, 5);
  CHECK((one + (-one)).is_zero());

  // (2y + 20 + 2/y) + 0 is unchanged
  PuiseuxSeries row(5);
  row.add_term(2, 0, 1);
  row.add_term(20, 0, 0);
  row.add_term(2, 0, -1);
  CHECK(row + PuiseuxSeries(5) == row);

  // like terms merge
  PuiseuxSeries half = PuiseuxSeries::monomial(1, Rational(1, 8), Rational(1, 2), 5);
  PuiseuxSeries sum = half + half;
  CHECK(sum.coefficient(Rational(1, 8), Rational(1, 2)) == 2);
  CHECK(sum.term_count() == 1);
}

TEST_CASE("multiplication basics") {
  PuiseuxSeries one_plus_q(5), one_minus_q(5);
  one_plus_q.add_term(1, 0, 0);
  one_plus_q.add_term(1, 1, 0);
  one_minus_q.add_term(1, 0, 0);
  one_minus_q.add_term(-1, 1, 0);
  PuiseuxSeries prod = one_plus_q * one_minus_q;
  CHECK(prod.coefficient(0, 0) == 1);
  CHECK(prod.coefficient(1, 0) == 0);
  CHECK(prod.coefficient(2, 0) == -1);

  // eta-product partial prod_{n=1..3} (1 - q^n), truncation 6:
  // oracle expansion gives 1 - q - q^2 + q^4 + q^5 (the q^6 term is cut).
  PuiseuxSeries acc = PuiseuxSeries::constant(1, 6);
  for (int n = 1; n <= 3; ++n) {
    PuiseuxSeries f(6);
    f.add_term(1, 0, 0);
    f.add_term(-1, n, 0);
    acc = acc * f;
  }
  PuiseuxSeries expected(6);
  expected.add_term(1, 0, 0);
  expected.add_term(-1, 1, 0);
  expected.add_term(-1, 2, 0);
  expected.add_term(1, 4, 0);
  expected.add_term(1, 5, 0);
  CHECK(acc == expected);

  // multiplicative identity; the unit carries enough precision that the
  // pessimistic truncation rule cannot bite even for negative-leading s
  std::mt19937 rng(7u);
  for (int i = 0; i < 20; ++i) {
    PuiseuxSeries s = random_series(rng);
    CHECK(s * PuiseuxSeries::constant(1, 10) == s);
  }
}

TEST_CASE("ring axioms on randomized series, exact") {
  std::mt19937 rng(42u);
  for (int i = 0; i < 60; ++i) {
    PuiseuxSeries a = random_series(rng), b = random_series(rng), c = random_series(rng);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("multiplication agrees with the dense oracle") {
  std::mt19937 rng(11u);
  for (int i = 0; i < 40; ++i) {
    PuiseuxSeries a = random_series(rng), b = random_series(rng);
    PuiseuxSeries prod = a * b;
    CHECK(prod.agrees_below(oracle_mul(a, b, prod.truncation_order()),
                            prod.truncation_order()));
  }
}

TEST_CASE("exponent lattice is enforced") {
  PuiseuxSeries s(2);
  CHECK_THROWS_AS(s.add_term(1, Rational(1, 7), 0), Error);
  CHECK_THROWS_AS(s.add_term(1, 0, Rational(1, 3)), Error);
  s.add_term(1, Rational(1, 24), Rational(-1, 2));
  CHECK(s.term_count() == 1);
}

TEST_CASE("inverse: geometric series") {
  PuiseuxSeries a(8);
  a.add_term(1, 0, 0);
  a.add_term(-1, 1, 0);
  PuiseuxSeries inv = a.inverse(8);
  for (int n = 0; n < 8; ++n) CHECK(inv.coefficient(n, 0) == 1);
  PuiseuxSeries prod = a * inv;
  CHECK(prod == PuiseuxSeries::constant(1, prod.truncation_order()));
}

TEST_CASE("inverse: monomial") {
  PuiseuxSeries m = PuiseuxSeries::monomial(2, Rational(1, 8), Rational(1, 2), 6);
  PuiseuxSeries inv = m.inverse(6);
  CHECK(inv.coefficient(Rational(-1, 8), Rational(-1, 2)) == Rational(1, 2));
  CHECK(inv.term_count() == 1);
}

TEST_CASE("inverse: theta_3(tau, 0), checked by multiplying back") {
  PuiseuxSeries t3 = theta_series(3, 4).with_y_one();
  PuiseuxSeries inv = t3.inverse(4);
  // leading coefficients 1 - 2 q^(1/2) + 4 q - ...
  CHECK(inv.coefficient(0, 0) == 1);
  CHECK(inv.coefficient(Rational(1, 2), 0) == -2);
  CHECK(inv.coefficient(1, 0) == 4);
  PuiseuxSeries prod = t3 * inv;
  CHECK(prod == PuiseuxSeries::constant(1, prod.truncation_order()));
}

TEST_CASE("inverse errors") {
  CHECK_THROWS_AS(PuiseuxSeries(3).inverse(3), Error);
  PuiseuxSeries two_monomials(3);
  two_monomials.add_term(1, 0, 1);
  two_monomials.add_term(1, 0, -1);
  CHECK_THROWS_AS(two_monomials.inverse(3), Error);
}

TEST_CASE("inverse of inverse is the identity up to truncation") {
  std::mt19937 rng(5u);
  for (int i = 0; i < 30; ++i) {
    PuiseuxSeries s = random_series(rng);
    PuiseuxSeries unit = PuiseuxSeries::monomial(Rational(3, 2), Rational(-1, 8), 1, 3);
    // force a unit leading term below everything random
    PuiseuxSeries a = unit + s.shifted(Rational(1, 2), 0).truncated(3);
    PuiseuxSeries round_trip = a.inverse(3).inverse(3);
    Rational window = std::min(round_trip.truncation_order(), a.truncation_order());
    CHECK(a.agrees_below(round_trip, window));
  }
}

TEST_CASE("coefficient rows and order errors") {
  PuiseuxSeries s(2);
  s.add_term(1, 0, 0);
  s.add_term(1, 1, 1);
  auto row = s.coefficient_row(1);
  CHECK(row.size() == 1);
  CHECK(row.at(1) == 1);
  CHECK(s.coefficient_row(Rational(1, 2)).empty());
  CHECK_THROWS_AS(s.coefficient_row(2), Error);
  CHECK_THROWS_AS(s.coefficient_row(3), Error);
}

TEST_CASE("numeric evaluation") {
  // constants evaluate to themselves
  ComplexPoint p(std::complex<double>(0.3, 1.1), std::complex<double>(0.2, 0.1));
  EvalResult one = PuiseuxSeries::constant(1, 30).eval(p);
  CHECK(std::abs(one.value - std::complex<double>(1.0, 0.0)) < 1e-15);

  // q at tau = i is e^(-2 pi)
  ComplexPoint at_i(std::complex<double>(0.0, 1.0), 0.0);
  PuiseuxSeries q = PuiseuxSeries::monomial(1, 1, 0, 30);
  CHECK(std::abs(q.eval(at_i).value.real() - std::exp(-2.0 * 3.14159265358979324)) < 1e-12);

  // eta(i) = Gamma(1/4) / (2 pi^(3/4)), an independent closed form
  double expected = std::tgamma(0.25) / (2.0 * std::pow(3.14159265358979324, 0.75));
  EvalResult eta = eta_series(30).eval(at_i);
  CHECK(std::abs(eta.value.real() - expected) < 1e-10);
  CHECK(std::abs(eta.value.imag()) < 1e-14);
  CHECK_FALSE(eta.precision_warning);
}

TEST_CASE("eval of a product = product of evals, within stated error") {
  std::mt19937 rng(23u);
  std::uniform_int_distribution<long long> q24(0, 20);
  std::uniform_int_distribution<long long> y2(-4, 4);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  ComplexPoint p(std::complex<double>(0.1, 0.9), std::complex<double>(0.05, 0.0));
  for (int i = 0; i < 20; ++i) {
    // truncation 3 = 72 units; products of exponents <= 20 are never cut,
    // so the identity holds up to float rounding
    PuiseuxSeries a(3), b(3);
    for (int t = 0; t < 4; ++t) {
      a.add_term_units(Rational(num(rng), den(rng)), q24(rng), y2(rng));
      b.add_term_units(Rational(num(rng), den(rng)), q24(rng), y2(rng));
    }
    PuiseuxSeries prod = a * b;
    EvalResult pa = a.eval(p), pb = b.eval(p), pp = prod.eval(p);
    double scale = std::max(1.0, std::abs(pa.value) * std::abs(pb.value));
    CHECK(std::abs(pa.value * pb.value - pp.value) <= 1e-12 * scale);
  }
}

TEST_CASE("precision warning fires when the tail is not negligible") {
  // truncation order 2 at small Im(tau): |q|^2 is order one
  PuiseuxSeries s = PuiseuxSeries::constant(1, 2);
  EvalResult r = s.eval(ComplexPoint(std::complex<double>(0.0, 0.05), 0.0));
  CHECK(r.precision_warning);
  CHECK(r.tail_bound > 1e-12);
}

TEST_CASE("canonical text form") {
  PuiseuxSeries s(3);
  s.add_term(1, 0, 0);
  s.add_term(Rational(-1, 2), Rational(1, 2), Rational(-3, 2));
  s.add_term(2, Rational(1, 2), 1);
  CHECK(s.canonical_text() ==
        "0/1 0/1 1/1\n"
        "1/2 -3/2 -1/2\n"
        "1/2 1/1 2/1\n");
}

TEST_CASE("truncation propagates pessimistically") {
  PuiseuxSeries a(5), b(3);
  a.add_term(1, 0, 0);
  b.add_term(1, 0, 0);
  CHECK((a + b).truncation_order() == 3);
  CHECK((a * b).truncation_order() == 3);
  // negative leading exponents shrink the exact region of a product
  PuiseuxSeries c = PuiseuxSeries::monomial(1, -1, 0, 5);
  CHECK((c * c).truncation_order() == 4);
}
