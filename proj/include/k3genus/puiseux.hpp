#pragma once

#include <complex>
#include <map>
#include <string>

#include "k3genus/errors.hpp"
#include "k3genus/rational.hpp"

namespace k3genus {

// Exponent pair on the fixed lattice (1/24)Z x (1/2)Z, stored in lattice
// units: q24 = 24 * (q-exponent), y2 = 2 * (y-exponent). The denominators
// 24 and 2 are the smallest that accommodate eta, the four theta functions
// and the y^(-D/2) prefactor of the elliptic genus bundle; exponents outside
// this lattice are rejected rather than supported.
struct QYExp {
  long long q24 = 0;
  long long y2 = 0;

  friend bool operator<(const QYExp& a, const QYExp& b) {
    if (a.q24 != b.q24) return a.q24 < b.q24;
    return a.y2 < b.y2;
  }
  friend bool operator==(const QYExp& a, const QYExp& b) {
    return a.q24 == b.q24 && a.y2 == b.y2;
  }
};

struct ComplexPoint {
  std::complex<double> tau;  // Im(tau) > 0
  std::complex<double> z;

  ComplexPoint(std::complex<double> tau_, std::complex<double> z_) : tau(tau_), z(z_) {
    if (!(tau.imag() > 0)) fail(Errc::invalid_input, "ComplexPoint requires Im(tau) > 0");
  }
};

struct EvalResult {
  std::complex<double> value{0.0, 0.0};
  // |q|^(truncation order): magnitude of the first q-power that may have
  // been discarded.
  double tail_bound = 0.0;
  bool precision_warning = false;  // tail_bound > 1e-12 * |value|
};

// Exclusive bound in q24 units corresponding to a rational truncation order:
// a term with exponent e = q24/24 survives iff e < order iff q24 < result.
long long order_to_units(const Rational& order);

/**
 * Bivariate formal series in q and y with exact rational coefficients and
 * exponents on (1/24)Z x (1/2)Z. Terms with q-exponent >= the truncation
 * order are discarded; the truncation is tracked through every operation
 * and never silently widened. Values are immutable after construction
 * (operations return new series), so they are safe to share across threads.
 */
class PuiseuxSeries {
 public:
  // Zero series with an empty exact region; assign before use.
  PuiseuxSeries() : trunc24_(0) {}

  // Zero series, exact below `order`.
  explicit PuiseuxSeries(const Rational& order);

  static PuiseuxSeries monomial(const Rational& coeff, const Rational& q_exp,
                                const Rational& y_exp, const Rational& order);
  static PuiseuxSeries constant(const Rational& value, const Rational& order);

  Rational truncation_order() const { return Rational(trunc24_, 24); }
  long long truncation_units() const { return trunc24_; }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<QYExp, Rational>& terms() const { return terms_; }

  // Smallest stored q-exponent in q24 units; requires a nonzero series.
  long long min_q_units() const;

  // Validates the exponent lattice; drops terms at/above the truncation.
  void add_term(const Rational& coeff, const Rational& q_exp, const Rational& y_exp);
  void add_term_units(const Rational& coeff, long long q24, long long y2);

  PuiseuxSeries operator-() const;
  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);

  PuiseuxSeries scaled(const Rational& s) const;
  PuiseuxSeries pow(unsigned exponent) const;

  // Multiplication by the exact monomial q^q_exp * y^y_exp. The exact region
  // shifts along: truncation becomes trunc + q_exp.
  PuiseuxSeries shifted(const Rational& q_exp, const Rational& y_exp) const;

  // Truncate to a smaller (or equal) order.
  PuiseuxSeries truncated(const Rational& order) const;

  /**
   * Multiplicative inverse b with a*b = 1 + O(q^order). Requires a unit
   * leading term: the minimal q-exponent stratum must consist of a single
   * y-monomial. Throws NotInvertible otherwise.
   */
  PuiseuxSeries inverse(const Rational& order) const;

  // The Laurent polynomial in y multiplying q^q_exp, as y-exponent -> coeff.
  // Throws OrderExceeded if q_exp >= truncation order.
  std::map<Rational, Rational> coefficient_row(const Rational& q_exp) const;
  Rational coefficient(const Rational& q_exp, const Rational& y_exp) const;

  PuiseuxSeries with_y_one() const;       // y -> 1
  PuiseuxSeries with_y_negated() const;   // y -> -y; integer y-exponents only
  PuiseuxSeries with_y_inverted() const;  // y -> 1/y

  // y -> y*q^(1/2) (the series action of z -> z + tau/2). Exponents below
  // the old truncation can map above or below it, so the caller states the
  // truncation of the result; terms landing at or above it are dropped.
  PuiseuxSeries with_y_times_sqrt_q(const Rational& new_order) const;

  // Numeric sum of all stored terms at q = e^(2 pi i tau), y = e^(2 pi i z).
  EvalResult eval(const ComplexPoint& p) const;

  // Canonical text form: one term per line, "q_num/q_den y_num/y_den
  // coeff_num/coeff_den", sorted by (q-exponent, y-exponent).
  std::string canonical_text() const;

  // True iff all terms with q-exponent < order coincide. Throws if either
  // truncation is smaller than `order` (the comparison would be vacuous).
  bool agrees_below(const PuiseuxSeries& other, const Rational& order) const;

  // Identical truncation and identical terms.
  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return a.trunc24_ == b.trunc24_ && a.terms_ == b.terms_;
  }

 private:
  std::map<QYExp, Rational> terms_;
  long long trunc24_;  // exclusive bound on q24
};

}  // namespace k3genus
