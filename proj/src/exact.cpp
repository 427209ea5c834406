#include "pgcache/exact.hpp"

#include <cmath>
#include <limits>

#include "pgcache/errors.hpp"

namespace pgcache {

Integer ipow(const Integer& base, unsigned exponent) {
  Integer result = 1;
  Integer b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

Integer factorial(unsigned n) {
  Integer result = 1;
  for (unsigned i = 2; i <= n; ++i) result *= i;
  return result;
}

Integer ceil_div(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidArgument("ceil_div: division by zero");
  Integer q = num / den;
  Integer r = num % den;
  if (r != 0 && ((r > 0) == (den > 0))) ++q;
  return q;
}

Integer floor(const Rational& r) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  Integer q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

Integer ceil(const Rational& r) {
  return ceil_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

std::string to_string(const Rational& r) {
  const Integer& den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw InvalidArgument("zero denominator in rational '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw InvalidArgument("malformed rational '" + text + "'");
  }
}

double log_of(const Integer& value) {
  if (value <= 0) throw InvalidArgument("log_of: non-positive argument");
  // Keep the top 60 bits and account for the rest as a power of two.
  unsigned bits = boost::multiprecision::msb(value) + 1;
  if (bits <= 60) return std::log(value.convert_to<double>());
  unsigned shift = bits - 60;
  Integer top = value >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

std::uint64_t to_u64(const Integer& value) {
  if (value < 0 || value > std::numeric_limits<std::uint64_t>::max()) {
    throw InvalidArgument("value " + value.str() + " does not fit in 64 bits");
  }
  return value.convert_to<std::uint64_t>();
}

}  // namespace pgcache
