#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace emergence {

/// Exact rational number; GMP keeps it canonical (positive denominator, reduced).
using Rational = mpq_class;

/// Parses "p", "p/q", "-p/q" or a decimal literal such as "4.54999995e-09"
/// into an exact rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace emergence
