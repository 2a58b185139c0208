#include "k3genus/rational.hpp"

#include "k3genus/errors.hpp"

namespace k3genus {

Rational parse_rational(std::string_view text) {
  auto bad = [&] { fail(Errc::invalid_input, "not a rational: '" + std::string(text) + "'"); };
  if (text.empty()) bad();
  auto slash = text.find('/');
  auto parse_int = [&](std::string_view part) -> Integer {
    if (part.empty()) bad();
    std::size_t i = (part[0] == '+' || part[0] == '-') ? 1 : 0;
    if (i == part.size()) bad();
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') bad();
    return Integer(std::string(part));
  };
  Integer num = parse_int(slash == std::string_view::npos ? text : text.substr(0, slash));
  Integer den = 1;
  if (slash != std::string_view::npos) {
    den = parse_int(text.substr(slash + 1));
    if (den == 0) bad();
  }
  return Rational(num, den);
}

std::string frac_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string plain_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return frac_string(r);
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

Integer floor_rational(const Rational& r) {
  Integer q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

Integer ceil_rational(const Rational& r) { return -floor_rational(-r); }

Integer isqrt_floor(const Integer& n) {
  if (n < 0) fail(Errc::invalid_input, "isqrt of negative value");
  if (n == 0) return 0;
  Integer x = 1;
  x <<= (msb(n) / 2 + 1);  // x*x > n
  // Newton iteration, monotonically decreasing once above the root.
  while (true) {
    Integer y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return x;
}

Integer ceil_sqrt_rational(const Rational& r) {
  if (r < 0) fail(Errc::invalid_input, "sqrt of negative value");
  Integer c = ceil_rational(r);
  Integer s = isqrt_floor(c);
  if (Rational(s * s) >= r) return s;
  return s + 1;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

long long to_long(const Integer& n) { return n.convert_to<long long>(); }

}  // namespace k3genus
