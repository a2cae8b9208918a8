#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lqt {

using Integer = mpz_class;

// GMP keeps mpq_class canonical (lowest terms, positive denominator) as long
// as every constructed value is canonicalized; make_rational and
// parse_rational do that.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

// Accepts "p", "-p", "p/q" with arbitrary-size decimal integers.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& q);

// Decimal rendering with `digits` fractional digits, truncated toward zero.
std::string to_decimal(const Rational& q, unsigned digits);

// Number of bits of |n| (0 for n == 0).
std::size_t bit_length(const Integer& n);

// Smallest integer >= q, largest integer <= q.
Integer ceil(const Rational& q);
Integer floor(const Rational& q);

} // namespace lqt
