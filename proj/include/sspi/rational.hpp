#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace sspi {

using BigInt = boost::multiprecision::cpp_int;

// All item values and expectations are exact rationals. The competitive
// margin 2*E[gambler] - E[prophet] is compared against zero without any
// floating point in between.
using Rational = boost::multiprecision::cpp_rational;

// Parses "7", "-2", "3.25", "2.5e3" or "13/4" into an exact rational.
// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

// Exact conversion of a finite double (every finite double is a rational).
Rational rational_from_double(double x);

// "9/2" for non-integers, "5" for integers.
std::string to_fraction_string(const Rational& r);

double to_double(const Rational& r);

} // namespace sspi
