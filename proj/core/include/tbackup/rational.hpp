#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tbackup {

// GMP keeps every mpq result canonical: positive denominator, gcd 1.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

bool is_integer(const Rational& q);
bool is_half_integral(const Rational& q);
Rational floor_of(const Rational& q);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Fixed-point rendering rounded half away from zero.
std::string to_decimal(const Rational& q, int places = 6);

/// Accepts "p", "-p" and "p/q". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

}  // namespace tbackup
