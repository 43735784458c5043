#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace mls {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient; zero outside 0 <= k <= n.
BigInt binomial(int n, int k);

/// Accepts "3", "-7", "2562/1000" and plain decimals such as "2.562".
/// Throws Error(InvalidParams) on anything else or a zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical "num/den" (or "num" when den == 1).
std::string to_string(const Rational& r);

/// Rounds half away from zero to a fixed number of decimals, e.g. 5/3 -> "1.6667".
std::string to_fixed(const Rational& r, int decimals);

double to_double(const Rational& r);

/// Ceiling of a non-negative rational.
BigInt ceil(const Rational& r);

Rational pow(const Rational& base, int exponent);

}  // namespace mls
