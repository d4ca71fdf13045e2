#ifndef ZARISKI_RATIONAL_HPP
#define ZARISKI_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace zariski {

// GMP rationals; every value handed out by this library is canonical
// (positive denominator, coprime numerator and denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" into a canonical Rational.
/// Throws SchemaError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" form; integers are written "p/1" so the format is uniform.
std::string format_rational(const Rational& value);

/// Exact square root of a non-negative rational, if it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& value);

}  // namespace zariski

#endif  // ZARISKI_RATIONAL_HPP
