#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ultrachase {

/// Exact rational number. All norm exponents, Hahn-sum exponents and
/// coefficients in this library are Rationals; nothing is ever rounded.
using Rational = mpq_class;

/// Parses "num", "num/den" or "-num/den" (any base-10 integers) into a
/// canonical Rational. Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical form: "num" when the denominator is 1, else "num/den".
std::string to_string(const Rational& q);

inline Rational rational_of(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational_of: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

} // namespace ultrachase
