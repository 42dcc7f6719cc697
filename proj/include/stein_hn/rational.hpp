#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace stein_hn {

using Integer = mpz_class;
using Rational = mpq_class;

/// Nearest double, by a single rounding of the quotient carried at 128 bits.
double to_double(const Rational& q);

/// "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& q);

/// Parses "p/q" or "p"; the result is canonicalized. Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace stein_hn
