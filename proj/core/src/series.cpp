#include "rhosharp/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rhosharp/errors.hpp"

namespace rhosharp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kTailProbe = 512;  // horizon for projecting law-side term valuations
}  // namespace

TailLaw TailLaw::affine(Rational slope) {
    TailLaw law;
    law.kind = Kind::Affine;
    law.c = slope;
    return law;
}

TailLaw TailLaw::quadratic() {
    TailLaw law;
    law.kind = Kind::Quadratic;
    return law;
}

TailLaw TailLaw::n_over_log_n() {
    TailLaw law;
    law.kind = Kind::NOverLogN;
    return law;
}

TailLaw TailLaw::table_law(std::vector<Rational> values) {
    TailLaw law;
    law.kind = Kind::Table;
    law.table = std::move(values);
    return law;
}

bool TailLaw::in_range(int n) const {
    const int ne = n + offset;
    if (ne < 0) return false;
    if (kind == Kind::Table) return ne < static_cast<int>(table.size());
    return true;
}

double TailLaw::g(int n) const {
    const int ne = n + offset;
    switch (kind) {
        case Kind::Affine:
            return to_double(c) * ne;
        case Kind::Quadratic:
            return static_cast<double>(ne) * ne;
        case Kind::NOverLogN:
            return ne <= 1 ? 0.0 : -ne / std::log(static_cast<double>(ne));
        case Kind::Table:
            return to_double(table.at(static_cast<std::size_t>(ne)));
    }
    return 0.0;
}

std::optional<Rational> TailLaw::g_exact(int n) const {
    const int ne = n + offset;
    switch (kind) {
        case Kind::Affine:
            return c * Rational(ne);
        case Kind::Quadratic:
            return Rational(ne) * Rational(ne);
        case Kind::Table:
            return table.at(static_cast<std::size_t>(ne));
        default:
            return std::nullopt;
    }
}

TailLaw TailLaw::shifted(int k) const {
    TailLaw law = *this;
    law.offset += k;
    return law;
}

const GenComplex& PowerSeries::a(int n) const {
    return coeffs.at(static_cast<std::size_t>(n));
}

PowerSeries PowerSeries::geometric(Rational cap, int n_store) {
    PowerSeries s;
    s.center = AsymptoticScalar::zero(cap);
    s.coeffs.assign(static_cast<std::size_t>(n_store), AsymptoticScalar::constant(1.0, cap));
    s.law = TailLaw::affine(Rational(0));
    s.label = "geometric";
    return s;
}

PowerSeries PowerSeries::rho_nsq(int n_store) {
    PowerSeries s;
    s.center = AsymptoticScalar::zero(Rational(kDefaultCap));
    double fact = 1.0;
    for (int n = 0; n < n_store; ++n) {
        if (n > 0) fact *= n;
        // cap wide enough that the single stored term is never truncated away
        Rational e = Rational(n) * Rational(n);
        s.coeffs.push_back(AsymptoticScalar::monomial(1.0 / fact, e, e + Rational(kDefaultCap)));
    }
    s.law = TailLaw::quadratic();
    s.label = "rho_nsq_series";
    return s;
}

PowerSeries PowerSeries::rho_n_over_log_n(Rational cap, int n_store) {
    PowerSeries s;
    s.center = AsymptoticScalar::zero(cap);
    for (int n = 0; n < n_store; ++n) {
        if (n <= 1) {
            s.coeffs.push_back(AsymptoticScalar::constant(1.0, cap));
            continue;
        }
        // nearest 64th of -n/ln n; the law itself stays the honest descriptor
        double g = -n / std::log(static_cast<double>(n));
        auto num = static_cast<std::int64_t>(std::llround(g * 64.0));
        s.coeffs.push_back(AsymptoticScalar::monomial(1.0, Rational(num, 64), cap));
    }
    s.law = TailLaw::n_over_log_n();
    s.label = "rho_n_over_log_n";
    return s;
}

void validate(const PowerSeries& s) {
    if (!s.law) return;
    for (int n = 0; n < s.stored(); ++n) {
        const auto& a = s.coeffs[static_cast<std::size_t>(n)];
        if (a.empty()) continue;  // asserts nothing below its cap
        if (!s.law->in_range(n))
            throw Error("stored coefficient " + std::to_string(n) +
                        " is nonzero past the end of a terminating law");
        if (auto exact = s.law->g_exact(n)) {
            if (a.leading_exponent() != *exact)
                throw Error("stored coefficient " + std::to_string(n) +
                            " has valuation " + to_string(a.leading_exponent()) +
                            ", law demands " + to_string(*exact));
        } else if (std::abs(to_double(a.leading_exponent()) - s.law->g(n)) > 0.05) {
            throw Error("stored coefficient " + std::to_string(n) +
                        " strays from the declared law");
        }
    }
}

RadiusReport convergence_radius(const PowerSeries& s) {
    RadiusReport rep;
    auto fill_norms = [&](auto&& val_of) {
        for (int n = 1; n <= std::max(s.stored() - 1, 16); ++n) {
            auto v = val_of(n);
            if (!v) continue;
            rep.root_norms.push_back(std::exp(-*v / n));
        }
    };
    if (s.law && !s.law->terminating()) {
        rep.method = RadiusReport::Method::ExactLaw;
        switch (s.law->kind) {
            case TailLaw::Kind::Affine:
                rep.R = std::exp(to_double(s.law->c));
                break;
            case TailLaw::Kind::Quadratic:
                rep.R = kInf;
                break;
            default:  // NOverLogN: g(n)/n -> 0
                rep.R = 1.0;
                break;
        }
        fill_norms([&](int n) -> std::optional<double> {
            if (!s.law->in_range(n)) return std::nullopt;
            return s.law->g(n);
        });
        return rep;
    }
    if (s.law && s.law->terminating()) {
        // a polynomial is entire
        rep.method = RadiusReport::Method::ExactLaw;
        rep.R = kInf;
        fill_norms([&](int n) -> std::optional<double> {
            if (!s.law->in_range(n)) return std::nullopt;
            return s.law->g(n);
        });
        return rep;
    }
    rep.method = RadiusReport::Method::EstimatedFromStored;
    rep.estimate_warning = true;
    double limsup = 0.0;
    int seen = 0;
    for (int n = 1; n < s.stored(); ++n) {
        const auto& a = s.coeffs[static_cast<std::size_t>(n)];
        if (a.empty()) continue;
        double rn = std::exp(-to_double(a.leading_exponent()) / n);
        rep.root_norms.push_back(rn);
        // only the tail half of the stored prefix feeds the limsup estimate
        if (n >= s.stored() / 2) {
            limsup = std::max(limsup, rn);
            ++seen;
        }
    }
    rep.R = seen == 0 ? kInf : 1.0 / limsup;
    return rep;
}

namespace {

// Valuation of the n-th term under the law, at offset-from-center valuation v.
double term_valuation(const TailLaw& law, int n, double v) {
    return law.g(n) + n * v;
}

// Smallest projected term valuation over [from, from + kTailProbe].
double projected_min(const TailLaw& law, int from, double v) {
    double lo = kInf;
    for (int k = from; k <= from + kTailProbe; ++k) {
        if (!law.in_range(k)) break;
        lo = std::min(lo, term_valuation(law, k, v));
    }
    return lo;
}

std::string divergence_certificate(const TailLaw& law, double v, const char* headline) {
    std::ostringstream os;
    os << headline << "; term sharp norms e^(-t_n) with t_n = g(n) + n*v(z-z0):";
    for (int n = 0; n <= 40; n += 8) {
        if (!law.in_range(n)) break;
        os << " t_" << n << "=" << term_valuation(law, n, v);
    }
    return os.str();
}

}  // namespace

GenValue sum_at(const PowerSeries& s, const GenComplex& z, Rational precision) {
    const GenComplex dz = z - s.center;
    const double m = to_double(precision);
    const bool have_law = s.law.has_value();
    const auto vdz_ext = dz.valuation();
    const double vdz = to_double(vdz_ext.bound());

    // Radius gate: only an invertible offset with an exactly known valuation
    // can be rejected; the divergence certificate shows the term valuations
    // refusing to climb, which in the ultrametric settles divergence.
    if (have_law && !s.law->terminating() && !dz.empty() && vdz_ext.is_exact()) {
        const Rational v = vdz_ext.bound();
        switch (s.law->kind) {
            case TailLaw::Kind::Affine:
                if (v < -s.law->c)
                    throw NotInRadiusError(
                        "offset norm exceeds the convergence radius",
                        divergence_certificate(*s.law, vdz, "term norms grow without bound"));
                if (v == -s.law->c)
                    throw NotInRadiusError(
                        "offset norm equals the convergence radius",
                        divergence_certificate(*s.law, vdz,
                                               "term norms stall, partial sums cannot settle"));
                break;
            case TailLaw::Kind::NOverLogN:
                if (v <= Rational(0))
                    throw NotInRadiusError(
                        "offset norm reaches the convergence radius",
                        divergence_certificate(*s.law, vdz, "term norms grow without bound"));
                break;
            default:
                break;  // entire
        }
    }

    GenValue out;
    out.provenance = Provenance::SymbolicExact;
    out.value = AsymptoticScalar::zero(precision);
    bool assigned = false;

    GenComplex dzpow = AsymptoticScalar::constant(1.0, dz.cap());
    for (int n = 0; n < s.stored(); ++n) {
        if (have_law && !s.law->in_range(n)) {
            out.tail_norm_bound = 0.0;  // terminating law: the tail is exactly zero
            return out;
        }
        // Stop once every remaining term provably sits below the precision.
        if (have_law) {
            const double remaining = projected_min(*s.law, n, vdz);
            if (remaining > m) {
                out.tail_norm_bound = std::exp(-remaining);
                return out;
            }
        } else {
            double remaining = kInf;
            for (int k = n; k < s.stored(); ++k) {
                const auto& a = s.coeffs[static_cast<std::size_t>(k)];
                double va = a.empty() ? to_double(a.cap()) : to_double(a.leading_exponent());
                remaining = std::min(remaining, va + k * vdz);
            }
            if (remaining > m) {
                out.tail_norm_bound = std::exp(-remaining);
                return out;
            }
        }
        const GenComplex term = s.coeffs[static_cast<std::size_t>(n)] * dzpow;
        out.value = assigned ? out.value + term : term;
        assigned = true;
        dzpow = dzpow * dz;
    }

    if (have_law && !s.law->in_range(s.stored())) {
        out.tail_norm_bound = 0.0;
        return out;
    }
    if (have_law) {
        const double remaining = projected_min(*s.law, s.stored(), vdz);
        if (remaining > m) {
            out.tail_norm_bound = std::exp(-remaining);
            return out;
        }
    }
    throw NotConvergedError("stored coefficients exhausted before the requested precision; "
                            "store more terms or lower the precision");
}

PowerSeries deflate(const PowerSeries& s) {
    if (s.stored() == 0) throw ConstantTermNotZeroError("no coefficients to deflate");
    if (!s.coeffs.front().empty())
        throw ConstantTermNotZeroError("constant term " + to_string(s.coeffs.front()) +
                                       " is not negligible");
    PowerSeries out;
    out.center = s.center;
    out.coeffs.assign(s.coeffs.begin() + 1, s.coeffs.end());
    if (s.law) out.law = s.law->shifted(1);
    out.label = s.label.empty() ? "deflated" : s.label + "/(z-z0)";
    return out;
}

PowerSeries multiply_by_offset(const PowerSeries& s) {
    PowerSeries out;
    out.center = s.center;
    Rational cap = s.stored() ? s.coeffs.front().cap() : Rational(kDefaultCap);
    out.coeffs.push_back(AsymptoticScalar::zero(cap));
    out.coeffs.insert(out.coeffs.end(), s.coeffs.begin(), s.coeffs.end());
    if (s.law) out.law = s.law->shifted(-1);
    out.label = s.label.empty() ? "shifted" : s.label + "*(z-z0)";
    return out;
}

std::string to_string(const TailLaw& law) {
    std::ostringstream os;
    switch (law.kind) {
        case TailLaw::Kind::Affine:
            os << "v(a_n) = " << to_string(law.c) << "*n";
            break;
        case TailLaw::Kind::Quadratic:
            os << "v(a_n) = n^2";
            break;
        case TailLaw::Kind::NOverLogN:
            os << "v(a_n) = -n/ln n";
            break;
        case TailLaw::Kind::Table:
            os << "v(a_n) tabulated, " << law.table.size() << " entries";
            break;
    }
    if (law.offset != 0) os << " (index offset " << law.offset << ")";
    return os.str();
}

}  // namespace rhosharp
