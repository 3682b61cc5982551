#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace coopcache {

// Exact arithmetic for cache sizes, loads and rates. Values stay small
// (numerators and denominators are products of binomials for K <= ~20),
// so 64-bit components are ample.
// Compare with Rational(0), not a bare 0: under C++20 rewritten comparisons
// boost's mixed-type operator== recurses forever for int operands.
using Rational = boost::rational<std::int64_t>;

// Parses "p", "p/q" or a terminating decimal such as "2.5".
// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Decimal rendering with 12 significant digits.
std::string to_decimal(const Rational& value);

double to_double(const Rational& value);

inline bool is_integer(const Rational& value) { return value.denominator() == 1; }

}  // namespace coopcache
