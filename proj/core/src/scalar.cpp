#include "rhosharp/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "rhosharp/errors.hpp"

namespace rhosharp {

namespace {

// Merge raw terms: sort, combine equal exponents, drop cancelled coefficients
// and anything past the cap. A coefficient counts as cancelled only relative
// to the mass that produced it, so 1e-30 entered directly survives.
std::vector<Term> normalize(std::vector<Term> raw, const Rational& cap) {
    std::map<Rational, std::pair<Complex, double>> acc;  // exponent -> (sum, mass)
    for (const Term& t : raw) {
        if (t.exponent > cap) continue;
        auto& slot = acc[t.exponent];
        slot.first += t.coeff;
        slot.second += std::abs(t.coeff);
    }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (const auto& [e, slot] : acc) {
        const auto& [sum, mass] = slot;
        if (std::abs(sum) <= kCoeffTol * mass) continue;
        if (sum == Complex{}) continue;
        out.push_back({e, sum});
    }
    return out;
}

}  // namespace

AsymptoticScalar::AsymptoticScalar(std::vector<Term> terms, Rational cap)
    : terms_(normalize(std::move(terms), cap)), cap_(std::move(cap)) {}

AsymptoticScalar AsymptoticScalar::zero(Rational cap) { return AsymptoticScalar({}, std::move(cap)); }

AsymptoticScalar AsymptoticScalar::constant(Complex c, Rational cap) {
    return AsymptoticScalar({{Rational{0}, c}}, std::move(cap));
}

AsymptoticScalar AsymptoticScalar::rho(Rational cap) {
    return AsymptoticScalar({{Rational{1}, 1.0}}, std::move(cap));
}

AsymptoticScalar AsymptoticScalar::monomial(Complex c, Rational exponent, Rational cap) {
    return AsymptoticScalar({{std::move(exponent), c}}, std::move(cap));
}

const Rational& AsymptoticScalar::leading_exponent() const {
    if (terms_.empty()) throw Error("leading_exponent of a scalar with no terms");
    return terms_.front().exponent;
}

Complex AsymptoticScalar::leading_coeff() const {
    if (terms_.empty()) throw Error("leading_coeff of a scalar with no terms");
    return terms_.front().coeff;
}

bool AsymptoticScalar::is_real() const {
    for (const Term& t : terms_)
        if (std::abs(t.coeff.imag()) > kCoeffTol * std::abs(t.coeff)) return false;
    return true;
}

ExtendedValuation AsymptoticScalar::valuation() const {
    if (terms_.empty()) return ExtendedValuation::at_least(cap_);
    return ExtendedValuation::exact(terms_.front().exponent);
}

SharpNorm AsymptoticScalar::sharp_norm() const {
    auto v = valuation();
    return {std::exp(-to_double(v.value)), !v.is_exact()};
}

Complex AsymptoticScalar::eval_complex(double eps) const {
    Complex acc{};
    for (const Term& t : terms_) acc += t.coeff * std::pow(eps, to_double(t.exponent));
    return acc;
}

double AsymptoticScalar::eval_real(double eps) const {
    double acc = 0.0;
    for (const Term& t : terms_) acc += t.coeff.real() * std::pow(eps, to_double(t.exponent));
    return acc;
}

double AsymptoticScalar::log_abs(double eps) const {
    if (terms_.empty()) return -std::numeric_limits<double>::infinity();
    // |x| = eps^a0 * |c0 + sum_{k>0} c_k eps^(a_k - a0)|; the bracket stays
    // O(1) for small eps, so the log never overflows.
    const Rational& a0 = terms_.front().exponent;
    Complex bracket{};
    for (const Term& t : terms_) bracket += t.coeff * std::pow(eps, to_double(t.exponent - a0));
    if (bracket == Complex{}) return -std::numeric_limits<double>::infinity();
    return to_double(a0) * std::log(eps) + std::log(std::abs(bracket));
}

AsymptoticScalar AsymptoticScalar::truncated(Rational new_cap) const {
    return AsymptoticScalar(terms_, std::min(cap_, new_cap));
}

AsymptoticScalar AsymptoticScalar::real_part() const {
    std::vector<Term> out;
    for (const Term& t : terms_) out.push_back({t.exponent, Complex{t.coeff.real(), 0.0}});
    return AsymptoticScalar(std::move(out), cap_);
}

AsymptoticScalar AsymptoticScalar::imag_part() const {
    std::vector<Term> out;
    for (const Term& t : terms_) out.push_back({t.exponent, Complex{t.coeff.imag(), 0.0}});
    return AsymptoticScalar(std::move(out), cap_);
}

AsymptoticScalar operator+(const AsymptoticScalar& x, const AsymptoticScalar& y) {
    std::vector<Term> merged = x.terms();
    merged.insert(merged.end(), y.terms().begin(), y.terms().end());
    return AsymptoticScalar(std::move(merged), std::min(x.cap(), y.cap()));
}

AsymptoticScalar operator-(const AsymptoticScalar& x) {
    std::vector<Term> out = x.terms();
    for (Term& t : out) t.coeff = -t.coeff;
    return AsymptoticScalar(std::move(out), x.cap());
}

AsymptoticScalar operator-(const AsymptoticScalar& x, const AsymptoticScalar& y) { return x + (-y); }

namespace {

// Valuation lower bound with the cap standing in for an empty term list.
Rational val_or_cap(const AsymptoticScalar& x) {
    return x.empty() ? x.cap() : x.leading_exponent();
}

}  // namespace

AsymptoticScalar operator*(const AsymptoticScalar& x, const AsymptoticScalar& y) {
    // Precision bookkeeping: x is known modulo rho^cap(x), so the unknown part
    // of x contributes x_err * y ~ rho^(cap(x) + v(y)) and symmetrically.
    Rational cap = std::min(x.cap() + val_or_cap(y), y.cap() + val_or_cap(x));
    std::vector<Term> out;
    out.reserve(x.size() * y.size());
    for (const Term& a : x.terms())
        for (const Term& b : y.terms()) {
            Rational e = a.exponent + b.exponent;
            if (e > cap) continue;
            out.push_back({std::move(e), a.coeff * b.coeff});
        }
    return AsymptoticScalar(std::move(out), std::move(cap));
}

AsymptoticScalar operator*(Complex c, const AsymptoticScalar& x) {
    std::vector<Term> out = x.terms();
    for (Term& t : out) t.coeff *= c;
    return AsymptoticScalar(std::move(out), x.cap());
}

AsymptoticScalar conj(const AsymptoticScalar& x) {
    std::vector<Term> out = x.terms();
    for (Term& t : out) t.coeff = std::conj(t.coeff);
    return AsymptoticScalar(std::move(out), x.cap());
}

AsymptoticScalar abs_squared(const AsymptoticScalar& x) { return x * conj(x); }

std::optional<AsymptoticScalar> try_invert(const AsymptoticScalar& x) {
    if (x.empty()) return std::nullopt;
    const Rational a0 = x.leading_exponent();
    const Complex c0 = x.leading_coeff();
    // x = c0 rho^a0 (1 + y) with v(y) > 0. Solve (1 + y) S = 1 by forward
    // convolution: each S-slot is determined once, in increasing exponent
    // order, so multiplying back reproduces the defining sums and the
    // round-trip residual cancels at working precision instead of compounding
    // across an explicitly summed geometric tail.
    //
    // The input is only known modulo rho^cap, i.e. to relative order
    // rho^(cap - a0); the inverse has leading size rho^(-a0), which leaves
    // cap(1/x) = cap - 2 a0.
    const Rational rel_cap = x.cap() - a0;
    const Rational out_cap = rel_cap - a0;
    std::vector<Term> y;
    for (std::size_t k = 1; k < x.size(); ++k)
        y.push_back({x.terms()[k].exponent - a0, x.terms()[k].coeff / c0});

    std::map<Rational, std::pair<Complex, double>> slots;  // exponent -> (sum, mass)
    slots[Rational{0}] = {Complex{1.0, 0.0}, 1.0};
    std::vector<Term> out;
    for (auto it = slots.begin(); it != slots.end(); ++it) {
        const auto& [sum, mass] = it->second;
        if (std::abs(sum) <= kCoeffTol * mass) continue;
        out.push_back({it->first - a0, sum / c0});
        for (const Term& t : y) {
            Rational e = it->first + t.exponent;
            if (e > rel_cap) continue;
            Complex c = -t.coeff * sum;
            auto& slot = slots[e];  // insertion past `it` keeps iteration valid
            slot.first += c;
            slot.second += std::abs(c);
        }
    }
    return AsymptoticScalar(std::move(out), out_cap);
}

AsymptoticScalar invert(const AsymptoticScalar& x) {
    auto r = try_invert(x);
    if (!r) throw NotInvertibleError("scalar is zero up to rho^" + to_string(x.cap()));
    return *r;
}

AsymptoticScalar sqrt_real(const AsymptoticScalar& x) {
    if (x.empty()) {
        // |x| <= rho^cap gives |sqrt(x)| <= rho^(cap/2).
        return AsymptoticScalar::zero(x.cap() / 2);
    }
    if (!x.is_real() || x.leading_coeff().real() <= 0.0)
        throw Error("sqrt_real needs a real scalar with positive leading coefficient");
    const Rational a0 = x.leading_exponent();
    const double c0 = x.leading_coeff().real();
    // x = c0 rho^a0 (1 + w). Solve S*S = 1 + w slot by slot in increasing
    // exponent order: 2 S[e] = w[e] - sum over pairs {f,g}, f+g = e, 0<f<=g<e.
    // The pair sum for slot e is complete once every slot below e is final,
    // so each pair is pushed forward exactly once, when its larger member is
    // finalized.
    const Rational rel_cap = x.cap() - a0;
    std::map<Rational, std::pair<Complex, double>> rhs;  // slot -> (sum, mass)
    for (std::size_t k = 1; k < x.size(); ++k) {
        Complex c = x.terms()[k].coeff / x.leading_coeff();
        rhs[x.terms()[k].exponent - a0] = {c, std::abs(c)};
    }
    std::vector<std::pair<Rational, Complex>> s;  // finalized, increasing
    while (!rhs.empty()) {
        auto it = rhs.begin();
        const Rational e = it->first;
        const auto [sum, mass] = it->second;
        rhs.erase(it);
        if (e > rel_cap) continue;
        Complex se = sum / 2.0;
        if (std::abs(se) <= kCoeffTol * mass) continue;
        for (const auto& [f, sf] : s) {
            Rational g = e + f;
            if (g > rel_cap) continue;
            Complex c = -2.0 * se * sf;
            auto& slot = rhs[g];
            slot.first += c;
            slot.second += std::abs(c);
        }
        if (e + e <= rel_cap) {
            auto& slot = rhs[e + e];
            slot.first += -se * se;
            slot.second += std::abs(se * se);
        }
        s.emplace_back(e, se);
    }
    const double root0 = std::sqrt(c0);
    std::vector<Term> out;
    out.push_back({a0 / 2, root0});
    for (const auto& [e, c] : s) out.push_back({e + a0 / 2, root0 * c});
    return AsymptoticScalar(std::move(out), rel_cap + a0 / 2);
}

bool is_invertible(const AsymptoticScalar& x) { return !x.empty(); }

AsymptoticScalar pow(const AsymptoticScalar& x, long n) {
    if (n < 0) return pow(invert(x), -n);
    AsymptoticScalar acc = AsymptoticScalar::constant(1.0, x.cap());
    AsymptoticScalar base = x;
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1UL) acc = acc * base;
        base = base * base;
        e >>= 1UL;
    }
    return acc;
}

bool equal_up_to_cap(const AsymptoticScalar& x, const AsymptoticScalar& y) {
    const Rational horizon = std::min(x.cap(), y.cap());
    auto next = [&](const AsymptoticScalar& s, std::size_t i) -> const Term* {
        if (i >= s.size()) return nullptr;
        const Term& t = s.terms()[i];
        return t.exponent > horizon ? nullptr : &t;
    };
    std::size_t i = 0, j = 0;
    for (;;) {
        const Term* a = next(x, i);
        const Term* b = next(y, j);
        if (!a && !b) return true;
        if (!a || !b) return false;
        if (a->exponent != b->exponent) return false;
        double scale = std::abs(a->coeff) + std::abs(b->coeff);
        if (std::abs(a->coeff - b->coeff) > kCoeffTol * scale) return false;
        ++i;
        ++j;
    }
}

Ordering compare(const AsymptoticScalar& x, const AsymptoticScalar& y) {
    AsymptoticScalar d = x - y;
    if (d.empty()) return Ordering::Equivalent;
    if (!d.is_real()) return Ordering::Incomparable;
    // A nonzero real leading term decides the order outright: the difference
    // is then invertible, so the inequality is strict and order-theoretic.
    return d.leading_coeff().real() > 0 ? Ordering::Greater : Ordering::Less;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    } else {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
    }
    return buf;
}

std::string format_coeff(Complex c) {
    const bool has_re = c.real() != 0.0;
    const bool has_im = c.imag() != 0.0;
    if (has_re && has_im)
        return "(" + format_double(c.real()) + (c.imag() < 0 ? "-" : "+") +
               format_double(std::abs(c.imag())) + "*i)";
    if (has_im) {
        if (c.imag() == 1.0) return "i";
        if (c.imag() == -1.0) return "-1*i";
        return format_double(c.imag()) + "*i";
    }
    return format_double(c.real());
}

}  // namespace

std::string to_string(const AsymptoticScalar& x) {
    std::string out;
    if (x.empty()) {
        out = "0";
    } else {
        bool first = true;
        for (const Term& t : x.terms()) {
            if (!first) out += " + ";
            first = false;
            std::string c = format_coeff(t.coeff);
            if (t.exponent == Rational{0}) {
                out += c;
            } else {
                if (c != "1") out += c + "*";
                out += "rho";
                if (t.exponent != Rational{1}) out += "^(" + to_string(t.exponent) + ")";
            }
        }
    }
    out += " [cap " + to_string(x.cap()) + "]";
    return out;
}

std::string to_string(const ExtendedValuation& v) {
    switch (v.kind) {
        case ExtendedValuation::Kind::Exact:
            return to_string(v.value);
        case ExtendedValuation::Kind::AtLeast:
            return ">= " + to_string(v.value);
        default:
            return "infinite";
    }
}

std::string to_string(Ordering o) {
    switch (o) {
        case Ordering::Less:
            return "less";
        case Ordering::Greater:
            return "greater";
        case Ordering::Equivalent:
            return "equivalent";
        default:
            return "incomparable";
    }
}

}  // namespace rhosharp
