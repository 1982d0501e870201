#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hecke {

using Int = mpz_class;
using Rational = mpq_class;

/// Largest exponent for which exact powers are materialized.
inline constexpr unsigned long kMaxExactExponent = 1ul << 27;

/// Converts a non-negative exponent to unsigned long, throwing ExponentTooLarge
/// past kMaxExactExponent.
unsigned long to_exponent(const Int& e);

Int pow(const Int& base, unsigned long e);
Int pow(const Int& base, const Int& e);

/// b^eb * a^ea.
Int monomial(const Int& b, const Int& a, const Int& eb, const Int& ea);

/// 1 + x + ... + x^(m-1); zero when m == 0.
Int geometric_sum(const Int& x, std::uint64_t m);

Rational pow(const Rational& base, unsigned long e);

/// Floor and ceiling of n/d for d != 0.
Int floor_div(const Int& n, const Int& d);
Int ceil_div(const Int& n, const Int& d);
Int floor(const Rational& x);
Int ceil(const Rational& x);

/// Floor of sqrt(n) for n >= 0.
Int isqrt(const Int& n);
bool is_square(const Int& n);

/// Natural logarithm of |x| for x != 0, accurate to long double precision
/// in the mantissa and exact in the binary exponent.
long double log_abs(const Int& x);
long double log_abs(const Rational& x);
long double to_long_double(const Int& x);
long double to_long_double(const Rational& x);

std::string to_string(const Int& x);
std::string to_string(const Rational& x);

Int parse_int(const std::string& text);
Rational parse_rational(const std::string& text);

/// 2^e as a rational, e may be negative.
Rational pow2(long e);

}  // namespace hecke
