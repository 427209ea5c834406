#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pgcache {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Integer ipow(const Integer& base, unsigned exponent);
Integer factorial(unsigned n);
Integer ceil_div(const Integer& num, const Integer& den);
Integer ceil(const Rational& r);
Integer floor(const Rational& r);

// "p/q", or just "p" when the denominator is one.
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

// Natural logarithm of a positive integer, accurate for values far beyond double range.
double log_of(const Integer& value);

std::uint64_t to_u64(const Integer& value);

}  // namespace pgcache
