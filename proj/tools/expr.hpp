#pragma once

#include <map>
#include <string>
#include <utility>

#include "rhosharp/scalar.hpp"

namespace rhosharp::cli {

// Monomial map in z and conj(z); scalars live entirely in the (0,0) slot.
using PolyMap = std::map<std::pair<int, int>, AsymptoticScalar>;

// expr  := ('-')? term (('+'|'-') term)*
// term  := factor ('*' factor)*
// factor:= atom ('^' rational)?
// atom  := number | 'i' | 'rho' | '(' expr ')'          (scalar grammar)
//        | 'z' | 'zbar'                                  (function grammar)
// number:= digits ('/' digits | '.' digits)? ([eE] sign? digits)?
//
// Exponents are literal rationals, optionally signed and parenthesised.
// Fractional powers apply to single-term scalars only (principal branch);
// powers of z must be nonnegative integers. Anything else raises
// NonRepresentableError; malformed text raises SyntaxError with the offset.
AsymptoticScalar parse_scalar_expr(const std::string& text, Rational cap = kDefaultCap);
PolyMap parse_func_expr(const std::string& text, Rational cap = kDefaultCap);

// Exact rational literal ('7', '3/4', '2.5'); used for flag values too.
Rational parse_rational(const std::string& text);

// Canonical grammar-conformant rendering; parse(print(x)) == x exactly
// (coefficients rendered with enough digits to survive the round trip).
std::string print_expr(const AsymptoticScalar& x);

}  // namespace rhosharp::cli
