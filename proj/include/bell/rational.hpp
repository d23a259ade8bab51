#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace bell {

/// Exact rational scalar used for all LP and polytope data. GMP keeps values
/// in canonical form: reduced, denominator positive.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

using RatVec = std::vector<Rational>;

/// Parses "p/q" or a plain integer string (optional sign, arbitrary precision).
/// Throws Error{ParseError} on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Formats as "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

Rational dot(const RatVec& a, const RatVec& b);

Rational sum(const RatVec& values);

}  // namespace bell
