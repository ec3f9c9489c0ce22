#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace conelab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "n" or "p/q" (optional leading sign, no decimals, q > 0).
Rational parse_rational(std::string_view text);

/// Canonical "n" or "p/q" form, lowest terms, sign on the numerator.
std::string to_string(const Rational& value);

int sign(const Rational& value);

/// Requires an integral value that fits in a long.
long to_long(const Rational& value);

}  // namespace conelab
