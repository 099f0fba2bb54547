#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "rhosharp/config.hpp"
#include "rhosharp/rational.hpp"

namespace rhosharp {

using Complex = std::complex<double>;

struct Term {
    Rational exponent;
    Complex coeff;
};

struct ExtendedValuation {
    enum class Kind { Exact, AtLeast, Infinite };
    Kind kind = Kind::AtLeast;
    Rational value{0};

    static ExtendedValuation exact(Rational v) { return {Kind::Exact, v}; }
    static ExtendedValuation at_least(Rational v) { return {Kind::AtLeast, v}; }
    static ExtendedValuation infinite() { return {Kind::Infinite, Rational{0}}; }

    bool is_exact() const { return kind == Kind::Exact; }
    // Lower bound usable in either the Exact or AtLeast case.
    const Rational& bound() const { return value; }
};

// exp(-v); when only a valuation lower bound is known the norm is an upper
// bound and is flagged as such.
struct SharpNorm {
    double value = 0.0;
    bool is_upper_bound = false;
};

enum class Ordering { Less, Greater, Equivalent, Incomparable };

// Finite rho-power expansion  sum_k c_k * rho^(a_k)  with strictly increasing
// exact rational exponents and nonzero complex coefficients, plus a cap: the
// expansion says nothing about behaviour finer than rho^cap. An empty term
// list means "zero up to the cap", not zero.
class AsymptoticScalar {
public:
    AsymptoticScalar() : cap_(kDefaultCap) {}
    AsymptoticScalar(std::vector<Term> terms, Rational cap);

    static AsymptoticScalar zero(Rational cap = kDefaultCap);
    static AsymptoticScalar constant(Complex c, Rational cap = kDefaultCap);
    static AsymptoticScalar rho(Rational cap = kDefaultCap);
    static AsymptoticScalar monomial(Complex c, Rational exponent, Rational cap = kDefaultCap);

    const std::vector<Term>& terms() const { return terms_; }
    const Rational& cap() const { return cap_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    const Rational& leading_exponent() const;  // requires a nonempty term list
    Complex leading_coeff() const;

    bool is_real() const;  // every coefficient real up to the cancellation tolerance

    ExtendedValuation valuation() const;
    SharpNorm sharp_norm() const;

    // Representative net at a concrete epsilon. log_abs factors out the
    // leading power so it stays finite where eval_complex would overflow.
    Complex eval_complex(double eps) const;
    double eval_real(double eps) const;
    double log_abs(double eps) const;  // -inf when the term list is empty

    AsymptoticScalar truncated(Rational new_cap) const;
    AsymptoticScalar real_part() const;
    AsymptoticScalar imag_part() const;

private:
    std::vector<Term> terms_;
    Rational cap_;
};

// Convenient alias: the scalar type already carries complex coefficients, so a
// generalized complex number is the same object read through a different lens.
using GenComplex = AsymptoticScalar;

AsymptoticScalar operator+(const AsymptoticScalar& x, const AsymptoticScalar& y);
AsymptoticScalar operator-(const AsymptoticScalar& x, const AsymptoticScalar& y);
AsymptoticScalar operator-(const AsymptoticScalar& x);
AsymptoticScalar operator*(const AsymptoticScalar& x, const AsymptoticScalar& y);
AsymptoticScalar operator*(Complex c, const AsymptoticScalar& x);

AsymptoticScalar conj(const AsymptoticScalar& x);
AsymptoticScalar abs_squared(const AsymptoticScalar& x);  // x * conj(x)
AsymptoticScalar pow(const AsymptoticScalar& x, long n);  // negative n inverts

// Inverse truncated at the horizon the input supports. Empty result = the
// input is zero up to its cap, so no inverse can be certified.
std::optional<AsymptoticScalar> try_invert(const AsymptoticScalar& x);
AsymptoticScalar invert(const AsymptoticScalar& x);  // throws NotInvertibleError

// Square root of a real scalar whose leading coefficient is positive; an
// empty input maps to the empty scalar at half the cap. Used for symbolic
// distances via sqrt_real(abs_squared(...)).
AsymptoticScalar sqrt_real(const AsymptoticScalar& x);

bool is_invertible(const AsymptoticScalar& x);

// Canonical equality: term lists agree up to min(cap(x), cap(y)).
bool equal_up_to_cap(const AsymptoticScalar& x, const AsymptoticScalar& y);

// Order on real scalars via the sign of the leading term of x - y.
// Equivalent when the difference is empty; Incomparable when an imaginary
// component survives in the difference.
Ordering compare(const AsymptoticScalar& x, const AsymptoticScalar& y);

std::string to_string(const AsymptoticScalar& x);
std::string to_string(const ExtendedValuation& v);
std::string to_string(Ordering o);

}  // namespace rhosharp
