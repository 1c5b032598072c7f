#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace resavg {

/// Arbitrary-precision signed integer.
using Integer = mpz_class;

/// Arbitrary-precision rational. GMP keeps every mpq_class produced by
/// arithmetic in canonical form: denominator positive, gcd(num, den) = 1.
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws InvalidArgument when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses an optionally signed decimal integer. Rejects empty strings,
/// embedded whitespace and any non-digit character.
bool try_parse_integer(std::string_view text, Integer& out);
Integer parse_integer(std::string_view text);

/// Parses "a", "a/b" or a plain decimal such as "0.25" / "-1.5e-3" exactly.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& value);

/// "num/den" (always with the slash, "3/1" for integers).
std::string to_fraction_string(const Rational& value);

/// Decimal rendering with `digits` significant digits, round-half-even.
/// Positional notation for moderate magnitudes, otherwise d.ddd...e+XX.
std::string to_decimal(const Rational& value, int digits = 10);

/// Nearest double (for reporting only, never for comparisons).
double to_double(const Rational& value);

/// 10^k as an exact integer.
Integer pow10(unsigned long k);

/// p-adic valuation v_p(n) for n != 0.
unsigned long valuation(const Integer& n, const Integer& p);

}  // namespace resavg
