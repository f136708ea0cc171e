#pragma once

#include <gmpxx.h>
#include <string>

namespace takagi {

// All arithmetic in the library core is exact. GMP's mpz/mpq carry the
// arbitrary-precision integers and canonical reduced fractions.
using Int = mpz_class;
using Rational = mpq_class;

/// base^exp as an exact integer (exp >= 0).
Int pow_int(const Int& base, unsigned long exp);
Int pow_int(long base, unsigned long exp);

/// base^exp as an exact rational; exp may be negative.
Rational rational_pow(long base, long exp);

/// Canonical "p/q" rendering ("p" when q == 1, matching mpq).
std::string to_string(const Rational& q);

/// Parses "p/q", an integer, or a plain decimal such as "0.3125".
/// Throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);

/// x - floor(x), in [0, 1).
Rational fractional_part(const Rational& x);

} // namespace takagi
