#include "meshpat/numeric.hpp"

#include <stdexcept>

namespace meshpat {

BigInt factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of a negative number");
  BigInt result = 1;
  for (int i = 2; i <= n; ++i) result *= i;
  return result;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(BigInt(text));
  return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

BigInt to_integer(const Rational& value) {
  if (boost::multiprecision::denominator(value) != 1)
    throw std::domain_error("expected an integer, got " + to_string(value));
  return boost::multiprecision::numerator(value);
}

}  // namespace meshpat
