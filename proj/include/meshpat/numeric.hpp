#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace meshpat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(int n);

/// Zero outside 0 <= k <= n.
BigInt binomial(int n, int k);

/// Renders "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

Rational parse_rational(const std::string& text);

/// Throws std::domain_error unless the value is integral.
BigInt to_integer(const Rational& value);

}  // namespace meshpat
