#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace k3genus {

// Exact scalar types. cpp_rational keeps values in lowest terms with a
// positive denominator, which is exactly the invariant the whole library
// relies on.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p" or "p/q" with optional sign; q must be nonzero.
Rational parse_rational(std::string_view text);

// "p/q" with the denominator always spelled out ("3/1", "-1/2").
std::string frac_string(const Rational& r);

// "p" for integers, "p/q" otherwise.
std::string plain_string(const Rational& r);

bool is_integer(const Rational& r);

Integer floor_rational(const Rational& r);
Integer ceil_rational(const Rational& r);

// Largest m >= 0 with m*m <= n; requires n >= 0.
Integer isqrt_floor(const Integer& n);

// Smallest integer s >= 0 with s*s >= r; requires r >= 0.
Integer ceil_sqrt_rational(const Rational& r);

double to_double(const Rational& r);

long long to_long(const Integer& n);

}  // namespace k3genus
