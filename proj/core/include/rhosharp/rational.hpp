#pragma once

#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <string>

namespace rhosharp {

// Exact rational used for exponents and caps. Exponent arithmetic must never
// drift, so no doubles anywhere on this path.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::int64_t floor_rational(const Rational& r) {
    std::int64_t n = r.numerator(), d = r.denominator();  // d > 0 after normalization
    return n >= 0 ? n / d : -((-n + d - 1) / d);
}

inline std::int64_t ceil_rational(const Rational& r) { return -floor_rational(-r); }

std::string to_string(const Rational& r);

// Accepts "p", "p/q" and decimal literals ("1.5" -> 3/2). Throws
// std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

// Smallest rational representation of a double that came from user-facing
// decimals; used only by the expression parser.
Rational rational_from_decimal(const std::string& digits);

}  // namespace rhosharp
