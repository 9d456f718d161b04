#ifndef LATCOUNT_RATIONAL_HPP
#define LATCOUNT_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace latcount {

// Exact arbitrary-precision scalars. Rationals are kept canonical (lowest
// terms, positive denominator, zero as 0/1); every helper below preserves
// that form.
using Integer = mpz_class;
using Rational = mpq_class;

/// Builds a canonical rational from numerator and denominator.
Rational makeRational(const Integer& num, const Integer& den);

/// Largest integer n with n <= q.
Integer floorRat(const Rational& q);

/// Smallest integer n with n >= q.
Integer ceilRat(const Rational& q);

/// Nearest integer with ties broken toward the even integer.
Integer roundHalfEven(const Rational& q);

bool isIntegerRat(const Rational& q);

/// lcm of |a| and |b| (0 if either is 0).
Integer lcmInt(const Integer& a, const Integer& b);

/// Binomial coefficient C(n, k).
Integer binomial(unsigned long n, unsigned long k);

Integer factorial(unsigned long n);

/// Parses "p", "-p" or "p/q" (whitespace already stripped by callers).
/// Throws ParseError on malformed input or zero denominator.
Rational parseRational(const std::string& text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string ratToString(const Rational& q);

/// Converts to int64, throwing Error when out of range.
std::int64_t toInt64(const Integer& n);

}  // namespace latcount

#endif  // LATCOUNT_RATIONAL_HPP
