#include "k3genus/puiseux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace k3genus {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

long long checked_units(const Rational& exp, int denom, const char* what) {
  Rational scaled = exp * denom;
  if (!is_integer(scaled))
    fail(Errc::off_lattice, std::string(what) + " exponent " + plain_string(exp) +
                                " is not a multiple of 1/" + std::to_string(denom));
  return to_long(numerator(scaled));
}

}  // namespace

long long order_to_units(const Rational& order) {
  // q24/24 < order  <=>  q24 < 24*order; the exclusive integer bound is
  // ceil(24*order), except that an integral 24*order is its own bound.
  return to_long(ceil_rational(order * 24));
}

PuiseuxSeries::PuiseuxSeries(const Rational& order) : trunc24_(order_to_units(order)) {}

PuiseuxSeries PuiseuxSeries::monomial(const Rational& coeff, const Rational& q_exp,
                                      const Rational& y_exp, const Rational& order) {
  PuiseuxSeries s(order);
  s.add_term(coeff, q_exp, y_exp);
  return s;
}

PuiseuxSeries PuiseuxSeries::constant(const Rational& value, const Rational& order) {
  return monomial(value, 0, 0, order);
}

long long PuiseuxSeries::min_q_units() const {
  if (terms_.empty()) fail(Errc::invalid_input, "min_q_units of zero series");
  return terms_.begin()->first.q24;
}

void PuiseuxSeries::add_term(const Rational& coeff, const Rational& q_exp,
                             const Rational& y_exp) {
  add_term_units(coeff, checked_units(q_exp, 24, "q"), checked_units(y_exp, 2, "y"));
}

void PuiseuxSeries::add_term_units(const Rational& coeff, long long q24, long long y2) {
  if (coeff == 0 || q24 >= trunc24_) return;
  QYExp key{q24, y2};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

PuiseuxSeries PuiseuxSeries::operator-() const {
  PuiseuxSeries r;
  r.trunc24_ = trunc24_;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  PuiseuxSeries r;
  r.trunc24_ = std::min(a.trunc24_, b.trunc24_);
  for (const auto& [e, c] : a.terms_) r.add_term_units(c, e.q24, e.y2);
  for (const auto& [e, c] : b.terms_) r.add_term_units(c, e.q24, e.y2);
  return r;
}

PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + (-b); }

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  PuiseuxSeries r;
  // min(A, B) is the spec rule; the extra candidates A + min(b), B + min(a)
  // keep the bookkeeping sound when a factor starts at a negative q-power.
  long long t = std::min(a.trunc24_, b.trunc24_);
  if (!a.terms_.empty()) t = std::min(t, b.trunc24_ + a.min_q_units());
  if (!b.terms_.empty()) t = std::min(t, a.trunc24_ + b.min_q_units());
  r.trunc24_ = t;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      if (ea.q24 + eb.q24 >= r.trunc24_) break;  // b sorted by q24
      r.add_term_units(ca * cb, ea.q24 + eb.q24, ea.y2 + eb.y2);
    }
  }
  return r;
}

PuiseuxSeries PuiseuxSeries::scaled(const Rational& s) const {
  PuiseuxSeries r;
  r.trunc24_ = trunc24_;
  if (s == 0) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
  return r;
}

PuiseuxSeries PuiseuxSeries::pow(unsigned exponent) const {
  PuiseuxSeries acc = constant(1, truncation_order());
  PuiseuxSeries base = *this;
  while (exponent > 0) {
    if (exponent & 1u) acc = acc * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return acc;
}

PuiseuxSeries PuiseuxSeries::shifted(const Rational& q_exp, const Rational& y_exp) const {
  long long dq = checked_units(q_exp, 24, "q");
  long long dy = checked_units(y_exp, 2, "y");
  PuiseuxSeries r;
  r.trunc24_ = trunc24_ + dq;
  for (const auto& [e, c] : terms_) r.terms_.emplace(QYExp{e.q24 + dq, e.y2 + dy}, c);
  return r;
}

PuiseuxSeries PuiseuxSeries::truncated(const Rational& order) const {
  long long t = order_to_units(order);
  if (t > trunc24_)
    fail(Errc::invalid_input, "truncated() cannot widen the exact region");
  PuiseuxSeries r;
  r.trunc24_ = t;
  for (const auto& [e, c] : terms_) {
    if (e.q24 >= t) break;
    r.terms_.emplace(e, c);
  }
  return r;
}

PuiseuxSeries PuiseuxSeries::inverse(const Rational& order) const {
  if (terms_.empty())
    fail(Errc::not_invertible, "zero series has no inverse");
  auto lead = terms_.begin();
  auto next = std::next(lead);
  if (next != terms_.end() && next->first.q24 == lead->first.q24)
    fail(Errc::not_invertible,
         "minimal q-exponent stratum holds more than one y-monomial");

  const long long a24 = lead->first.q24;
  const long long b2 = lead->first.y2;
  const Rational lead_inv = Rational(1) / lead->second;

  // a = c q^alpha y^beta (1 + u) with u supported on strictly positive
  // q-powers; invert the unit via the geometric series.
  long long u_trunc = trunc24_ - a24;
  long long v_trunc = std::min(order_to_units(order), u_trunc);

  PuiseuxSeries u;
  u.trunc24_ = u_trunc;
  for (auto it = next; it != terms_.end(); ++it)
    u.add_term_units(it->second * lead_inv, it->first.q24 - a24, it->first.y2 - b2);

  PuiseuxSeries v;
  v.trunc24_ = v_trunc;
  v.add_term_units(1, 0, 0);
  if (!u.terms_.empty()) {
    PuiseuxSeries power = (-u).truncated(Rational(v_trunc, 24));
    while (!power.terms_.empty()) {
      v = v + power;
      power = power * (-u);
      power = power.truncated(Rational(v_trunc, 24));
    }
  }

  PuiseuxSeries r;
  r.trunc24_ = v_trunc - a24;
  for (const auto& [e, c] : v.terms_)
    r.add_term_units(c * lead_inv, e.q24 - a24, e.y2 - b2);
  return r;
}

std::map<Rational, Rational> PuiseuxSeries::coefficient_row(const Rational& q_exp) const {
  if (q_exp >= truncation_order())
    fail(Errc::order_exceeded, "coefficient of q^" + plain_string(q_exp) +
                                   " lies at or beyond the truncation order " +
                                   plain_string(truncation_order()));
  Rational scaled = q_exp * 24;
  std::map<Rational, Rational> row;
  if (!is_integer(scaled)) return row;  // off the exponent lattice: zero row
  long long q24 = to_long(numerator(scaled));
  for (auto it = terms_.lower_bound(QYExp{q24, std::numeric_limits<long long>::min()});
       it != terms_.end() && it->first.q24 == q24; ++it)
    row.emplace(Rational(it->first.y2, 2), it->second);
  return row;
}

Rational PuiseuxSeries::coefficient(const Rational& q_exp, const Rational& y_exp) const {
  auto row = coefficient_row(q_exp);
  auto it = row.find(y_exp);
  return it == row.end() ? Rational(0) : it->second;
}

PuiseuxSeries PuiseuxSeries::with_y_one() const {
  PuiseuxSeries r;
  r.trunc24_ = trunc24_;
  for (const auto& [e, c] : terms_) r.add_term_units(c, e.q24, 0);
  return r;
}

PuiseuxSeries PuiseuxSeries::with_y_negated() const {
  PuiseuxSeries r;
  r.trunc24_ = trunc24_;
  for (const auto& [e, c] : terms_) {
    if (e.y2 % 2 != 0)
      fail(Errc::off_lattice, "y -> -y needs integer y-exponents");
    r.add_term_units((e.y2 / 2) % 2 == 0 ? c : -c, e.q24, e.y2);
  }
  return r;
}

PuiseuxSeries PuiseuxSeries::with_y_inverted() const {
  PuiseuxSeries r;
  r.trunc24_ = trunc24_;
  for (const auto& [e, c] : terms_) r.add_term_units(c, e.q24, -e.y2);
  return r;
}

PuiseuxSeries PuiseuxSeries::with_y_times_sqrt_q(const Rational& new_order) const {
  PuiseuxSeries r;
  r.trunc24_ = order_to_units(new_order);
  for (const auto& [e, c] : terms_) r.add_term_units(c, e.q24 + 6 * e.y2, e.y2);
  return r;
}

EvalResult PuiseuxSeries::eval(const ComplexPoint& p) const {
  const std::complex<double> i2pi(0.0, kTwoPi);
  EvalResult out;
  for (const auto& [e, c] : terms_) {
    std::complex<double> exponent =
        i2pi * (p.tau * (static_cast<double>(e.q24) / 24.0) +
                p.z * (static_cast<double>(e.y2) / 2.0));
    out.value += to_double(c) * std::exp(exponent);
  }
  out.tail_bound = std::exp(-kTwoPi * p.tau.imag() * static_cast<double>(trunc24_) / 24.0);
  out.precision_warning = out.tail_bound > 1e-12 * std::abs(out.value);
  return out;
}

std::string PuiseuxSeries::canonical_text() const {
  std::ostringstream os;
  for (const auto& [e, c] : terms_)
    os << frac_string(Rational(e.q24, 24)) << ' ' << frac_string(Rational(e.y2, 2)) << ' '
       << frac_string(c) << '\n';
  return os.str();
}

bool PuiseuxSeries::agrees_below(const PuiseuxSeries& other, const Rational& order) const {
  long long t = order_to_units(order);
  if (t > trunc24_ || t > other.trunc24_)
    fail(Errc::invalid_input, "agrees_below beyond a truncation order");
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (true) {
    bool a_done = (a == terms_.end()) || a->first.q24 >= t;
    bool b_done = (b == other.terms_.end()) || b->first.q24 >= t;
    if (a_done && b_done) return true;
    if (a_done != b_done) return false;
    if (!(a->first == b->first) || a->second != b->second) return false;
    ++a;
    ++b;
  }
}

}  // namespace k3genus
