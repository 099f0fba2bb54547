#include "rhosharp/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace rhosharp {

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational rational_from_decimal(const std::string& digits) {
    auto dot = digits.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(digits));
    std::string intpart = digits.substr(0, dot);
    std::string frac = digits.substr(dot + 1);
    if (frac.empty()) return Rational(std::stoll(intpart.empty() ? "0" : intpart));
    std::int64_t den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) {
        if (den > (std::int64_t(1) << 50)) throw std::invalid_argument("decimal too fine: " + digits);
        den *= 10;
    }
    std::int64_t num = std::stoll((intpart.empty() ? "0" : intpart) + frac);
    return Rational(num, den);
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty rational");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    s = s.substr(i);
    if (s.empty()) throw std::invalid_argument("sign without digits: " + text);
    Rational r;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::int64_t num = std::stoll(s.substr(0, slash));
        std::int64_t den = std::stoll(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        r = Rational(num, den);
    } else {
        r = rational_from_decimal(s);
    }
    return neg ? -r : r;
}

}  // namespace rhosharp
