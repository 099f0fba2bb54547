#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rhosharp/config.hpp"
#include "rhosharp/scalar.hpp"
#include "rhosharp/value.hpp"

namespace rhosharp {

// Declared valuation law v(a_n) = g(n) for coefficients beyond (and alongside)
// the stored prefix. Laws are declared rather than inferred: a limsup over an
// undeclared infinite tail is not computable. A Table law is exhaustive: it
// asserts the series terminates after the last tabulated index.
struct TailLaw {
    enum class Kind { Affine, Quadratic, NOverLogN, Table };

    Kind kind = Kind::Affine;
    Rational c{0};                // Affine: g(n) = c*n
    std::vector<Rational> table;  // Table: g(n) = table[n]
    int offset = 0;               // deflation shift: effective g(n) = base(n + offset)

    static TailLaw affine(Rational slope);
    static TailLaw quadratic();
    static TailLaw n_over_log_n();
    static TailLaw table_law(std::vector<Rational> values);

    // Numeric valuation; requires in_range(n).
    double g(int n) const;
    // Exact value where the law is rational (everything except NOverLogN).
    std::optional<Rational> g_exact(int n) const;
    // False only for a Table law past its end: the coefficient there is zero.
    bool in_range(int n) const;
    bool terminating() const { return kind == Kind::Table; }

    TailLaw shifted(int k) const;
};

// Power series around a generalized center with a stored coefficient prefix
// and an optional tail law.
struct PowerSeries {
    GenComplex center;
    std::vector<GenComplex> coeffs;
    std::optional<TailLaw> law;
    std::string label;

    int stored() const { return static_cast<int>(coeffs.size()); }
    const GenComplex& a(int n) const;

    // a_n = 1 for all n.
    static PowerSeries geometric(Rational cap = Rational(kDefaultCap), int n_store = kSeriesStoreMax);
    // a_n = rho^(n^2)/n!; coefficients carry caps wide enough to keep every
    // stored exponent visible.
    static PowerSeries rho_nsq(int n_store = 24);
    // a_n = rho^(-n/ln n) (n >= 2; the first two coefficients are 1).
    static PowerSeries rho_n_over_log_n(Rational cap = Rational(kDefaultCap), int n_store = kSeriesStoreMax);
};

// Throws when a stored nonzero coefficient's valuation contradicts the law.
void validate(const PowerSeries& s);

struct RadiusReport {
    enum class Method { ExactLaw, EstimatedFromStored };

    double R = 0.0;  // may be +infinity
    Method method = Method::EstimatedFromStored;
    std::vector<double> root_norms;  // ||a_n||^(1/n) for the reported prefix
    bool estimate_warning = false;
};

// R = 1/limsup ||a_n||^(1/n). Closed form under a declared law; otherwise a
// flagged estimate from the stored tail.
RadiusReport convergence_radius(const PowerSeries& s);

// Partial sum at z until every remaining term has sharp norm <= e^(-m); the
// ultrametric bounds the omitted tail by its largest term, reported in
// tail_norm_bound. Throws NotInRadiusError outside the radius (with a
// divergence certificate when the term norms provably fail to vanish) and
// NotConvergedError when storage and law run out before the precision is met.
GenValue sum_at(const PowerSeries& s, const GenComplex& z, Rational precision = Rational(kDefaultCap));

// Factor (z - center) out of a series with negligible constant term.
PowerSeries deflate(const PowerSeries& s);

// Multiply by (z - center): the inverse of deflate up to the constant term.
PowerSeries multiply_by_offset(const PowerSeries& s);

std::string to_string(const TailLaw& law);

}  // namespace rhosharp
