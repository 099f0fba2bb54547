#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <vector>

#include "rhosharp/errors.hpp"

namespace rhosharp::cli {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    std::size_t pos = 0;
    std::string text;
    double dval = 0.0;
    std::optional<Rational> rval;  // exact value when the literal fits int64
};

// Exact rational from the literal's digits; nullopt on overflow.
std::optional<Rational> exact_rational(const std::string& text) {
    std::int64_t num = 0, den = 1;
    std::size_t i = 0;
    auto push_digit = [](std::int64_t& acc, char c) {
        if (acc > (INT64_MAX - (c - '0')) / 10) return false;
        acc = acc * 10 + (c - '0');
        return true;
    };
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i)
        if (!push_digit(num, text[i])) return std::nullopt;
    if (i < text.size() && text[i] == '/') {
        std::int64_t d = 0;
        for (++i; i < text.size(); ++i)
            if (!push_digit(d, text[i])) return std::nullopt;
        if (d == 0) return std::nullopt;
        return Rational(num, d);
    }
    if (i < text.size() && text[i] == '.') {
        for (++i; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            if (!push_digit(num, text[i])) return std::nullopt;
            if (den > INT64_MAX / 10) return std::nullopt;
            den *= 10;
        }
    }
    std::int64_t exp10 = 0;
    bool exp_neg = false;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_neg = text[i++] == '-';
        for (; i < text.size(); ++i)
            if (!push_digit(exp10, text[i])) return std::nullopt;
        if (exp10 > 18) return std::nullopt;
        std::int64_t p = 1;
        for (std::int64_t k = 0; k < exp10; ++k) p *= 10;
        if (exp_neg) {
            if (den > INT64_MAX / p) return std::nullopt;
            den *= p;
        } else {
            if (num > INT64_MAX / p) return std::nullopt;
            num *= p;
        }
    }
    return Rational(num, den);
}

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.pos = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            bool ratio = false;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j < s.size() && s[j] == '/') {
                std::size_t k = j + 1;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                if (k == j + 1) throw SyntaxError("expected digits after '/'", j + 1);
                j = k;
                ratio = true;
            } else if (j < s.size() && s[j] == '.') {
                ++j;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            }
            if (!ratio && j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
                std::size_t d = k;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                if (k > d) j = k;  // otherwise the 'e' starts an identifier
            }
            t.kind = Tok::Number;
            t.text = s.substr(i, j - i);
            t.rval = exact_rational(t.text);
            if (auto slash = t.text.find('/'); slash != std::string::npos) {
                t.dval = std::strtod(t.text.c_str(), nullptr) /
                         std::strtod(t.text.c_str() + slash + 1, nullptr);
            } else {
                t.dval = std::strtod(t.text.c_str(), nullptr);
            }
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            t.kind = Tok::Ident;
            t.text = s.substr(i, j - i);
            i = j;
        } else {
            switch (c) {
                case '+': t.kind = Tok::Plus; break;
                case '-': t.kind = Tok::Minus; break;
                case '*': t.kind = Tok::Star; break;
                case '^': t.kind = Tok::Caret; break;
                case '(': t.kind = Tok::LParen; break;
                case ')': t.kind = Tok::RParen; break;
                default:
                    throw SyntaxError(std::string("unexpected character '") + c + "'", i);
            }
            t.text = c;
            ++i;
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.pos = s.size();
    out.push_back(end);
    return out;
}

PolyMap& trim(PolyMap& m) {
    for (auto it = m.begin(); it != m.end();)
        it = it->second.empty() ? m.erase(it) : std::next(it);
    return m;
}

class Parser {
public:
    Parser(const std::string& text, Rational cap, bool scalar_only)
        : toks_(lex(text)), cap_(cap), scalar_only_(scalar_only) {}

    PolyMap run() {
        PolyMap v = expr();
        if (peek().kind != Tok::End)
            throw SyntaxError("unexpected trailing '" + peek().text + "'", peek().pos);
        return v;
    }

private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;
    Rational cap_;
    bool scalar_only_;

    const Token& peek() const { return toks_[at_]; }
    const Token& take() { return toks_[at_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++at_;
        return true;
    }

    PolyMap expr() {
        bool neg = accept(Tok::Minus);
        PolyMap acc = term();
        if (neg) negate(acc);
        for (;;) {
            if (accept(Tok::Plus)) {
                add(acc, term(), false);
            } else if (accept(Tok::Minus)) {
                add(acc, term(), true);
            } else {
                return acc;
            }
        }
    }

    PolyMap term() {
        PolyMap acc = factor();
        while (accept(Tok::Star)) acc = multiply(acc, factor());
        return acc;
    }

    PolyMap factor() {
        PolyMap base = atom();
        if (!accept(Tok::Caret)) return base;
        std::size_t pos = peek().pos;
        Rational e = exponent();
        return power(std::move(base), e, pos);
    }

    PolyMap atom() {
        const Token& t = take();
        switch (t.kind) {
            case Tok::Number:
                return constant(Complex{t.dval, 0.0});
            case Tok::Ident:
                if (t.text == "i") return constant(Complex{0.0, 1.0});
                if (t.text == "rho") return constant(AsymptoticScalar::rho(cap_));
                if (t.text == "z" || t.text == "zbar") {
                    if (scalar_only_)
                        throw SyntaxError("'" + t.text + "' is not a scalar", t.pos);
                    PolyMap m;
                    m[{t.text == "z" ? 1 : 0, t.text == "z" ? 0 : 1}] =
                        AsymptoticScalar::constant(1.0, cap_);
                    return m;
                }
                throw SyntaxError("unknown name '" + t.text + "'", t.pos);
            case Tok::LParen: {
                PolyMap inner = expr();
                if (!accept(Tok::RParen)) throw SyntaxError("expected ')'", peek().pos);
                return inner;
            }
            default:
                throw SyntaxError("expected a number, name, or '('", t.pos);
        }
    }

    // Literal rational, optionally signed, optionally in one layer of parens.
    Rational exponent() {
        bool paren = accept(Tok::LParen);
        bool neg = false;
        if (accept(Tok::Minus))
            neg = true;
        else
            accept(Tok::Plus);
        const Token& t = take();
        if (t.kind == Tok::Ident)
            throw NonRepresentableError("exponent must be a fixed rational, got '" + t.text +
                                        "'");
        if (t.kind != Tok::Number) throw SyntaxError("expected a rational exponent", t.pos);
        if (!t.rval)
            throw NonRepresentableError("exponent '" + t.text +
                                        "' does not fit an exact rational");
        if (paren && !accept(Tok::RParen))
            throw SyntaxError("expected ')' after the exponent", peek().pos);
        return neg ? -*t.rval : *t.rval;
    }

    PolyMap constant(Complex c) {
        PolyMap m;
        m[{0, 0}] = AsymptoticScalar::constant(c, cap_);
        return trim(m);
    }
    PolyMap constant(AsymptoticScalar s) {
        PolyMap m;
        m[{0, 0}] = std::move(s);
        return trim(m);
    }

    static void negate(PolyMap& m) {
        for (auto& [k, v] : m) v = AsymptoticScalar::zero(v.cap()) - v;
    }

    void add(PolyMap& acc, PolyMap rhs, bool minus) {
        for (auto& [k, v] : rhs) {
            auto it = acc.find(k);
            AsymptoticScalar cur = it == acc.end() ? AsymptoticScalar::zero(cap_) : it->second;
            acc[k] = minus ? cur - v : cur + v;
        }
        trim(acc);
    }

    PolyMap multiply(const PolyMap& a, const PolyMap& b) {
        PolyMap out;
        for (const auto& [ka, va] : a)
            for (const auto& [kb, vb] : b) {
                std::pair<int, int> k{ka.first + kb.first, ka.second + kb.second};
                auto it = out.find(k);
                out[k] = it == out.end() ? va * vb : it->second + va * vb;
            }
        return trim(out);
    }

    PolyMap power(PolyMap base, Rational e, std::size_t pos) {
        bool scalar = base.empty() || (base.size() == 1 && base.begin()->first == std::pair{0, 0});
        if (!scalar) {
            if (e.denominator() != 1 || e.numerator() < 0)
                throw NonRepresentableError(
                    "powers of z must be nonnegative integers, got '" + to_string_rat(e) + "'");
            return int_power(std::move(base), e.numerator(), pos);
        }
        AsymptoticScalar s =
            base.empty() ? AsymptoticScalar::zero(cap_) : base.begin()->second;
        if (e.denominator() == 1) {
            if (e.numerator() >= 0) return int_power(std::move(base), e.numerator(), pos);
            return constant(pow(s, e.numerator()));  // throws NotInvertible on zero lead
        }
        // fractional power: single-term scalars only, principal branch
        if (s.empty()) {
            if (e.numerator() > 0) return PolyMap{};
            throw NotInvertibleError("fractional negative power of zero");
        }
        if (s.size() != 1)
            throw NonRepresentableError(
                "fractional power of a sum is outside the expressible fragment");
        double ed = static_cast<double>(e.numerator()) / static_cast<double>(e.denominator());
        Complex c = std::pow(s.terms()[0].coeff, Complex{ed, 0.0});
        return constant(AsymptoticScalar::monomial(c, s.terms()[0].exponent * e, cap_));
    }

    PolyMap int_power(PolyMap base, std::int64_t n, std::size_t pos) {
        if (n == 0) return constant(Complex{1.0, 0.0});
        if (n > 64)
            throw NonRepresentableError("integer exponent " + std::to_string(n) +
                                        " is past the supported range (64)");
        // single-term scalar: exact exponent arithmetic instead of repeated products
        if (base.size() == 1 && base.begin()->first == std::pair{0, 0} &&
            base.begin()->second.size() == 1) {
            const auto& t = base.begin()->second.terms()[0];
            Complex c{1.0, 0.0};
            for (std::int64_t k = 0; k < n; ++k) c *= t.coeff;
            return constant(AsymptoticScalar::monomial(c, t.exponent * Rational(n), cap_));
        }
        (void)pos;
        PolyMap acc = constant(Complex{1.0, 0.0});
        for (std::int64_t k = 0; k < n; ++k) acc = multiply(acc, base);
        return acc;
    }

    static std::string to_string_rat(const Rational& r) {
        std::string s = std::to_string(r.numerator());
        if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
        return s;
    }
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // the lexer owns no leading '+'; strtod output never carries one anyway
    return buf;
}

std::string fmt_exponent(const Rational& e) {
    if (e.denominator() == 1 && e.numerator() >= 0) return std::to_string(e.numerator());
    std::string s = "(" + std::to_string(e.numerator());
    if (e.denominator() != 1) s += "/" + std::to_string(e.denominator());
    return s + ")";
}

}  // namespace

PolyMap parse_func_expr(const std::string& text, Rational cap) {
    return Parser(text, cap, false).run();
}

AsymptoticScalar parse_scalar_expr(const std::string& text, Rational cap) {
    PolyMap m = Parser(text, cap, true).run();
    if (m.empty()) return AsymptoticScalar::zero(cap);
    return m.begin()->second;
}

Rational parse_rational(const std::string& text) {
    auto toks = lex(text);
    std::size_t at = 0;
    bool neg = false;
    if (toks[at].kind == Tok::Minus) {
        neg = true;
        ++at;
    }
    if (toks[at].kind != Tok::Number || toks[at + 1].kind != Tok::End)
        throw SyntaxError("expected a rational literal", toks[at].pos);
    if (!toks[at].rval) throw NonRepresentableError("'" + text + "' overflows exact rationals");
    return neg ? -*toks[at].rval : *toks[at].rval;
}

std::string print_expr(const AsymptoticScalar& x) {
    if (x.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : x.terms()) {
        Complex c = t.coeff;
        std::string coeff;
        bool negative = false;
        if (c.imag() == 0.0) {
            negative = c.real() < 0.0;
            double a = negative ? -c.real() : c.real();
            if (a != 1.0 || t.exponent == Rational(0)) coeff = fmt_double(a);
        } else if (c.real() == 0.0) {
            negative = c.imag() < 0.0;
            double b = negative ? -c.imag() : c.imag();
            coeff = b == 1.0 ? "i" : fmt_double(b) + "*i";
        } else {
            // both parts: parenthesised complex literal, sign kept inside
            coeff = "(";
            if (c.real() < 0.0) coeff += "-";
            coeff += fmt_double(std::abs(c.real()));
            coeff += c.imag() < 0.0 ? " - " : " + ";
            double b = std::abs(c.imag());
            coeff += b == 1.0 ? "i" : fmt_double(b) + "*i";
            coeff += ")";
        }
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        std::string rho;
        if (t.exponent != Rational(0)) {
            rho = "rho";
            if (t.exponent != Rational(1)) rho += "^" + fmt_exponent(t.exponent);
        }
        if (!coeff.empty() && !rho.empty())
            out += coeff + "*" + rho;
        else
            out += coeff.empty() ? rho : coeff;
    }
    return out;
}

}  // namespace rhosharp::cli
