#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace natquant {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parses "num/den" or "num". Throws std::invalid_argument on malformed
/// input or a zero denominator. The result is in canonical reduced form.
Rational parse_rational(std::string_view text);

/// Renders a rational as "num/den", omitting the denominator when it is 1.
std::string fraction_string(const Rational& q);

/// Renders a rational as a decimal string with the given number of
/// fractional digits, rounding the last digit to nearest (ties away
/// from zero). Exact integer long division; no floating point.
std::string decimal_string(const Rational& q, unsigned digits);

/// 2^e for any integer exponent.
Rational pow2(long e);

/// q^e for a nonnegative integer exponent.
Rational pow_rational(const Rational& q, std::uint64_t e);

}  // namespace natquant
