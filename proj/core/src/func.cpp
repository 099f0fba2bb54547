#include "rhosharp/func.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rhosharp/errors.hpp"
#include "rhosharp/onsets.hpp"

namespace rhosharp {

namespace {

Complex horner(const std::vector<Complex>& c, Complex w) {
    Complex acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * w + *it;
    return acc;
}

using CoeffMap = std::map<std::pair<int, int>, GenComplex>;

CoeffMap fp_add(const CoeffMap& x, const CoeffMap& y, bool negate_y) {
    CoeffMap out = x;
    for (const auto& [k, c] : y) {
        auto it = out.find(k);
        if (it == out.end())
            out.emplace(k, negate_y ? -c : c);
        else
            it->second = negate_y ? it->second - c : it->second + c;
    }
    return out;
}

CoeffMap fp_mul(const CoeffMap& x, const CoeffMap& y) {
    CoeffMap out;
    for (const auto& [kx, cx] : x)
        for (const auto& [ky, cy] : y) {
            std::pair<int, int> k{kx.first + ky.first, kx.second + ky.second};
            auto prod = cx * cy;
            auto it = out.find(k);
            if (it == out.end())
                out.emplace(k, std::move(prod));
            else
                it->second = it->second + prod;
        }
    return out;
}

CoeffMap fp_pow(const CoeffMap& x, int n, Rational cap) {
    CoeffMap acc{{{0, 0}, AsymptoticScalar::constant(1.0, cap)}};
    for (int i = 0; i < n; ++i) acc = fp_mul(acc, x);
    return acc;
}

Rational any_cap(const CoeffMap& m) {
    return m.empty() ? Rational(kDefaultCap) : m.begin()->second.cap();
}

}  // namespace

int FixedPoly::max_z_degree() const {
    int d = 0;
    for (const auto& [k, c] : coeffs) d = std::max(d, k.first);
    return d;
}

int FixedPoly::max_conj_degree() const {
    int d = 0;
    for (const auto& [k, c] : coeffs) d = std::max(d, k.second);
    return d;
}

bool FixedPoly::pure_z() const {
    for (const auto& [k, c] : coeffs)
        if (k.second > 0 && !c.empty()) return false;
    return true;
}

Schedule Schedule::log_default() {
    Schedule s;
    s.m = [](double eps) {
        return std::max(0, static_cast<int>(std::ceil(std::log(1.0 / eps))));
    };
    s.label = "ceil(ln(1/eps))";
    return s;
}

GenFunction GenFunction::poly(CoeffMap coeffs, std::string label) {
    GenFunction u;
    FixedPoly fp;
    fp.coeffs = std::move(coeffs);
    u.rep = std::move(fp);
    u.label = std::move(label);
    return u;
}

GenFunction GenFunction::monomial(int p, int q, GenComplex coeff) {
    return poly({{{p, q}, std::move(coeff)}});
}

GenFunction GenFunction::constant(GenComplex c) { return monomial(0, 0, std::move(c)); }

GenFunction GenFunction::identity(Rational cap) {
    return monomial(1, 0, AsymptoticScalar::constant(1.0, cap));
}

GenFunction GenFunction::conj_identity(Rational cap) {
    return monomial(0, 1, AsymptoticScalar::constant(1.0, cap));
}

GenFunction GenFunction::truncated(PowerSeries s, Schedule sch) {
    validate(s);
    GenFunction u;
    u.label = s.label;
    u.rep = TruncatedSeries{std::move(s), std::move(sch)};
    return u;
}

GenFunction GenFunction::sampled(std::function<Complex(double, Complex)> f, std::string label) {
    GenFunction u;
    SampledCallable sc;
    sc.f = std::move(f);
    sc.center = AsymptoticScalar::zero();
    sc.label = label;
    u.rep = std::move(sc);
    u.label = std::move(label);
    return u;
}

GenFunction GenFunction::ks_net() {
    GenFunction u;
    SampledCallable sc;
    sc.center = AsymptoticScalar::zero();
    sc.poly = [](double eps) {
        int m = std::max(0, static_cast<int>(std::floor(std::log(1.0 / eps))));
        std::vector<Complex> c(static_cast<std::size_t>(m) + 1, Complex{0.0, 0.0});
        c.back() = Complex{1.0, 0.0};
        return c;
    };
    sc.f = [poly = sc.poly](double eps, Complex z) { return horner(poly(eps), z); };
    sc.label = "ks_net";
    u.rep = std::move(sc);
    u.label = "ks_net";
    return u;
}

GenFunction GenFunction::with_domain(InternalSetRep dom) const {
    GenFunction u = *this;
    u.domain = std::move(dom);
    return u;
}

Complex GenFunction::eval_net(double eps, Complex z) const {
    if (is_poly()) {
        Complex acc{0.0, 0.0};
        const Complex zc = std::conj(z);
        for (const auto& [k, c] : as_poly().coeffs)
            acc += c.eval_complex(eps) * std::pow(z, k.first) * std::pow(zc, k.second);
        return acc;
    }
    if (is_series()) {
        const auto& ts = as_series();
        int keep = std::min(ts.schedule.m(eps), ts.series.stored() - 1);
        std::vector<Complex> c;
        c.reserve(static_cast<std::size_t>(std::max(keep + 1, 0)));
        for (int n = 0; n <= keep; ++n) c.push_back(ts.series.a(n).eval_complex(eps));
        return horner(c, z - ts.series.center.eval_complex(eps));
    }
    const auto& sc = as_sampled();
    if (sc.has_poly()) return horner(sc.poly(eps), z - sc.center.eval_complex(eps));
    return sc.f(eps, z);
}

namespace {

const FixedPoly& require_poly(const GenFunction& u, const char* op) {
    if (!u.is_poly())
        throw UnsupportedOperationError(std::string(op) +
                                        " needs fixed-polynomial operands; got " + to_string(u));
    return u.as_poly();
}

}  // namespace

GenFunction operator+(const GenFunction& u, const GenFunction& v) {
    return GenFunction::poly(
        fp_add(require_poly(u, "addition").coeffs, require_poly(v, "addition").coeffs, false));
}

GenFunction operator-(const GenFunction& u, const GenFunction& v) {
    return GenFunction::poly(
        fp_add(require_poly(u, "subtraction").coeffs, require_poly(v, "subtraction").coeffs, true));
}

GenFunction operator*(const GenFunction& u, const GenFunction& v) {
    return GenFunction::poly(
        fp_mul(require_poly(u, "multiplication").coeffs, require_poly(v, "multiplication").coeffs));
}

GenFunction operator*(const GenComplex& c, const GenFunction& u) {
    if (u.is_poly()) {
        CoeffMap out = u.as_poly().coeffs;
        for (auto& [k, cc] : out) cc = c * cc;
        return GenFunction::poly(std::move(out), u.label);
    }
    if (u.is_series()) {
        TruncatedSeries ts = u.as_series();
        for (auto& a : ts.series.coeffs) a = c * a;
        // a factor of valuation zero leaves the declared law intact
        if (c.empty() || c.leading_exponent() != Rational(0)) ts.series.law.reset();
        GenFunction out;
        out.rep = std::move(ts);
        out.label = u.label;
        return out;
    }
    const auto& sc = u.as_sampled();
    SampledCallable scaled;
    scaled.center = sc.center;
    scaled.label = sc.label + " scaled";
    if (sc.has_poly()) {
        scaled.poly = [c, inner = sc.poly](double eps) {
            auto coeffs = inner(eps);
            const Complex s = c.eval_complex(eps);
            for (auto& x : coeffs) x *= s;
            return coeffs;
        };
        scaled.f = [poly = scaled.poly, center = scaled.center](double eps, Complex z) {
            return horner(poly(eps), z - center.eval_complex(eps));
        };
    } else {
        scaled.f = [c, inner = sc.f](double eps, Complex z) {
            return c.eval_complex(eps) * inner(eps, z);
        };
    }
    GenFunction out;
    out.rep = std::move(scaled);
    out.label = scaled.label;
    return out;
}

GenFunction conj(const GenFunction& u) {
    const auto& fp = require_poly(u, "conjugation");
    CoeffMap out;
    for (const auto& [k, c] : fp.coeffs) out.emplace(std::make_pair(k.second, k.first), conj(c));
    return GenFunction::poly(std::move(out));
}

GenValue eval(const GenFunction& u, const GenComplex& z, const Config& cfg) {
    if (u.domain && !u.domain->has_net_radius() && contains(*u.domain, z) == Membership::No)
        throw OutOfDomainError("evaluation point provably outside the declared domain");

    if (u.is_poly()) {
        GenValue out;
        const Rational cap = z.cap();
        GenComplex acc = AsymptoticScalar::zero(cap);
        bool assigned = false;
        const GenComplex zc = conj(z);
        for (const auto& [k, c] : u.as_poly().coeffs) {
            GenComplex term = c * pow(z, k.first) * pow(zc, k.second);
            acc = assigned ? acc + term : term;
            assigned = true;
        }
        out.value = acc;
        return out;
    }
    if (u.is_series()) return sum_at(u.as_series().series, z, cfg.cap);

    const auto& sc = u.as_sampled();
    GenValue out;
    out.provenance = Provenance::Sampled;
    out.value = AsymptoticScalar::zero(cfg.cap);
    out.net = sample([&](double eps) { return u.eval_net(eps, z.eval_complex(eps)); }, cfg.grid,
                     (sc.label.empty() ? "sampled" : sc.label) + " at point");
    out.cls = classify(*out.net, cfg.oracle);
    return out;
}

namespace {

CoeffMap poly_derivative_step(const CoeffMap& in, bool conj_direction) {
    CoeffMap out;
    for (const auto& [k, c] : in) {
        int deg = conj_direction ? k.second : k.first;
        if (deg == 0) continue;
        auto key = conj_direction ? std::make_pair(k.first, k.second - 1)
                                  : std::make_pair(k.first - 1, k.second);
        auto scaled = Complex(static_cast<double>(deg), 0.0) * c;
        auto it = out.find(key);
        if (it == out.end())
            out.emplace(key, std::move(scaled));
        else
            it->second = it->second + scaled;
    }
    return out;
}

std::vector<Complex> complex_poly_derivative(std::vector<Complex> c, int k) {
    for (int round = 0; round < k; ++round) {
        if (c.size() <= 1) return {Complex{0.0, 0.0}};
        std::vector<Complex> next(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i)
            next[i - 1] = static_cast<double>(i) * c[i];
        c = std::move(next);
    }
    return c;
}

}  // namespace

GenFunction derivative_mixed(const GenFunction& u, int p, int q) {
    if (p < 0 || q < 0) throw UnsupportedOperationError("negative derivative order");
    if (p == 0 && q == 0) return u;
    if (u.is_poly()) {
        CoeffMap m = u.as_poly().coeffs;
        for (int i = 0; i < p; ++i) m = poly_derivative_step(m, false);
        for (int j = 0; j < q; ++j) m = poly_derivative_step(m, true);
        return GenFunction::poly(std::move(m));
    }
    if (u.is_series()) {
        if (q > 0)  // a power series in z has no conjugate direction
            return GenFunction::constant(AsymptoticScalar::zero(
                u.as_series().series.stored() ? u.as_series().series.coeffs.front().cap()
                                              : Rational(kDefaultCap)));
        TruncatedSeries ts = u.as_series();
        PowerSeries& s = ts.series;
        std::vector<GenComplex> out;
        for (int n = 0; n + p < s.stored(); ++n) {
            double factor = 1.0;
            for (int i = 1; i <= p; ++i) factor *= n + i;
            out.push_back(Complex(factor, 0.0) * s.a(n + p));
        }
        s.coeffs = std::move(out);
        if (s.law) s.law = s.law->shifted(p);
        s.label += "'";
        GenFunction r;
        r.rep = std::move(ts);
        r.label = u.label.empty() ? "derivative" : u.label + "'";
        return r;
    }
    const auto& sc = u.as_sampled();
    if (!sc.has_poly())
        throw UnsupportedOperationError(
            "derivative of a bare callable needs a declared coefficient form");
    if (q > 0)
        return GenFunction::constant(AsymptoticScalar::zero(Rational(kDefaultCap)));
    SampledCallable d;
    d.center = sc.center;
    d.label = sc.label + "'";
    d.poly = [inner = sc.poly, p](double eps) { return complex_poly_derivative(inner(eps), p); };
    d.f = [poly = d.poly, center = d.center](double eps, Complex z) {
        return horner(poly(eps), z - center.eval_complex(eps));
    };
    GenFunction r;
    r.rep = std::move(d);
    r.label = d.label;
    return r;
}

GenFunction derivative(const GenFunction& u, int k) { return derivative_mixed(u, k, 0); }

namespace {

double shape_extent(const ConcreteShape& s) {
    switch (s.kind) {
        case ShapeKind::Disc:
        case ShapeKind::Circle:
            return std::max(s.r1, 1e-300);
        case ShapeKind::Annulus:
            return std::max(s.r2, 1e-300);
        case ShapeKind::Rectangle:
            return std::max(std::abs(s.b - s.a), 1e-300);
        default:
            return std::max(std::abs(s.b - s.a) + s.r1, 1e-300);
    }
}

Complex dbar_stencil(const std::function<Complex(Complex)>& f, Complex z, double h) {
    const Complex ih{0.0, h};
    return (f(z + h) - f(z - h)) / (4.0 * h) +
           Complex{0.0, 1.0} * (f(z + ih) - f(z - ih)) / (4.0 * h);
}

// Numeric conjugate-direction test for bare callables: the finite stencil can
// refute holomorphy, never certify it beyond its own error budget, so readings
// inside the budget count as silence. The raw stencil reads h^2 f'''/6 on an
// analytic function; extrapolating two step sizes cancels that term, leaving
// rounding (mach |u| / h) plus an h^6 f^(7) remainder bounded through Cauchy
// from measured values on a circle of radius s around the point.
HolomorphyReport dbar_numeric(const GenFunction& u,
                              const std::function<std::vector<Complex>(double)>& points_at,
                              const std::function<double(double)>& scale_at, const Config& cfg) {
    HolomorphyReport rep;
    SampledNet signal;
    signal.grid = cfg.grid;
    signal.label = "sup |conj-direction reading| past its budget";
    const double mach = std::numeric_limits<double>::epsilon();
    for (int j = 0; j < cfg.grid.size(); ++j) {
        const double eps = cfg.grid.eps(j);
        const double s = std::max(scale_at(eps), 1e-300) * 0.25;
        const double h = std::cbrt(mach) * s;
        double sig = 0.0;
        bool bad = false;
        for (Complex z : points_at(eps)) {
            double seen = 0.0;
            std::function<Complex(Complex)> f = [&](Complex w) {
                Complex v = u.eval_net(eps, w);
                seen = std::max(seen, std::abs(v));
                return v;
            };
            const Complex d1 = dbar_stencil(f, z, h);
            const Complex d2 = dbar_stencil(f, z, 0.5 * h);
            const Complex d = (4.0 * d2 - d1) / 3.0;
            const double sup_near = std::max(seen, std::abs(f(z)));
            for (int t = 0; t < 8; ++t) f(z + std::polar(s, 0.785398163397448 * t));
            const double sup_s = seen;  // now covers the radius-s probes too
            if (!std::isfinite(std::abs(d)) || !std::isfinite(sup_s)) {
                bad = true;
                break;
            }
            const double r6 = (h / s) * (h / s) * (h / s);
            const double floor =
                64.0 * (mach * sup_near / h + 5040.0 * sup_s * r6 * r6 / s);
            if (std::abs(d) > floor) sig = std::max(sig, std::abs(d));
        }
        NetPoint ps{eps, cfg.grid.log_eps(j), Complex(sig, 0.0),
                    sig == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(sig), bad};
        signal.points.push_back(ps);
    }
    Classification cls = classify(signal, cfg.oracle);
    rep.cls = cls;
    if (cls.is_negligible()) {
        rep.holomorphic = true;
        rep.detail = "conjugate-direction stencil stays inside its error budget";
    } else {
        rep.holomorphic = false;
        rep.detail = "conjugate-direction signal above the stencil error budget: " +
                     to_string(cls);
    }
    return rep;
}

// Symbolic conjugate-direction filter; nullopt when sampling is required.
std::optional<HolomorphyReport> dbar_symbolic(const GenFunction& u) {
    if (u.is_series()) {
        HolomorphyReport rep;
        rep.holomorphic = true;
        rep.detail = "series in powers of (z - center), no conjugate direction";
        return rep;
    }
    if (u.is_sampled() && u.as_sampled().has_poly()) {
        HolomorphyReport rep;
        rep.holomorphic = true;
        rep.detail = "per-epsilon polynomial net, no conjugate direction";
        return rep;
    }
    if (u.is_poly()) {
        GenFunction db = derivative_mixed(u, 0, 1);
        bool all_empty = true;
        std::string witness;
        for (const auto& [k, c] : db.as_poly().coeffs) {
            if (c.empty()) continue;
            all_empty = false;
            witness = "coefficient " + to_string(c) + " at z^" + std::to_string(k.first) +
                      " conj(z)^" + std::to_string(k.second);
            break;
        }
        if (all_empty) {
            HolomorphyReport rep;
            rep.holomorphic = true;
            rep.detail = "every conjugate-direction coefficient is negligible";
            return rep;
        }
        HolomorphyReport rep;
        rep.holomorphic = false;
        rep.detail = "conjugate derivative survives: " + witness;
        return rep;
    }
    return std::nullopt;
}

}  // namespace

HolomorphyReport dbar_test(const GenFunction& u, const InternalSetRep& domain, const Config& cfg) {
    if (auto rep = dbar_symbolic(u)) {
        // a surviving symbolic coefficient still gets classified over the set,
        // so the report carries quantitative evidence
        if (!rep->holomorphic && u.is_poly()) {
            GenFunction db = derivative_mixed(u, 0, 1);
            auto on_set = classify_on_set(db, domain, 0, 1, cfg);
            rep->cls = on_set.worst();
            rep->holomorphic = rep->cls->is_negligible();
            if (rep->holomorphic)
                rep->detail = "conjugate derivative classifies negligible over the set";
        }
        return *rep;
    }
    auto unit = make_unit_samples(cfg.sampling);
    return dbar_numeric(
        u,
        [&](double eps) {
            auto pts = map_samples(grow(concretize(domain, eps), eps), unit);
            auto all = pts.all();
            if (all.size() > 64) all.resize(64);  // stencil cost: four evals per point
            return all;
        },
        [&](double eps) { return shape_extent(concretize(domain, eps)); }, cfg);
}

HolomorphyReport dbar_test(const GenFunction& u, const SharpBall& ball, const Config& cfg) {
    if (auto rep = dbar_symbolic(u)) {
        if (!rep->holomorphic && u.is_poly()) {
            // pointwise check at ball samples: symbolic values are exact
            GenFunction db = derivative_mixed(u, 0, 1);
            for (const auto& z : sample_ball_points(ball, 20)) {
                GenValue v = eval(db, z, cfg);
                if (!value_negligible(v)) {
                    rep->detail += "; witness value " + to_string(v.value);
                    return *rep;
                }
            }
            rep->holomorphic = true;
            rep->detail = "conjugate derivative negligible at every sampled ball point";
        }
        return *rep;
    }
    auto ball_points = [&](double eps) {
        std::vector<Complex> out;
        const Complex c = ball.center.eval_complex(eps);
        out.push_back(c);
        auto base = static_cast<double>(std::floor(-std::log(ball.r) * 10.0) + 1) / 10.0;
        for (int s = 0; s < 8; ++s) {
            double a = base + 0.25 * s;
            double r = std::pow(eps, a);
            for (int t = 0; t < 4; ++t) out.push_back(c + std::polar(r, 1.5707963267948966 * t));
        }
        return out;
    };
    return dbar_numeric(u, ball_points, [&](double) { return 1.0; }, cfg);
}

GenFunction compose(const GenFunction& v, const GenFunction& u, const InternalSetRep& A,
                    const InternalSetRep& B, const Config& cfg) {
    const bool symbolic_u = u.is_poly() || u.is_series();
    if (symbolic_u && !A.has_net_radius() && !B.has_net_radius()) {
        int idx = 0;
        for (const auto& x : sample_member_points(A, 100)) {
            GenValue w = eval(u, x, cfg);
            if (contains(B, w.value) == Membership::No)
                throw RangeViolationError("image point " + std::to_string(idx) + " = " +
                                          to_string(w.value) + " falls outside the target set");
            ++idx;
        }
    } else {
        // per-epsilon falsification on the grid tail, with a small slack pad
        auto unit = make_unit_samples(cfg.sampling);
        const int first = std::max(0, cfg.grid.size() - cfg.oracle.window);
        for (int j = first; j < cfg.grid.size(); ++j) {
            const double eps = cfg.grid.eps(j);
            auto target = grow(concretize(B, eps), eps);
            auto pts = map_samples(concretize(A, eps), unit);
            int idx = 0;
            for (Complex z : pts.all()) {
                if (idx++ >= 100) break;
                Complex w = u.eval_net(eps, z);
                auto inside = [&](const ConcreteShape& s, Complex p) {
                    switch (s.kind) {
                        case ShapeKind::Disc:
                            return std::abs(p - s.a) <= s.r1;
                        case ShapeKind::Circle:
                            return std::abs(std::abs(p - s.a) - s.r1) <= eps;
                        case ShapeKind::Annulus: {
                            double d = std::abs(p - s.a);
                            return d >= s.r1 && d <= s.r2;
                        }
                        case ShapeKind::Rectangle:
                            return p.real() >= s.a.real() && p.real() <= s.b.real() &&
                                   p.imag() >= s.a.imag() && p.imag() <= s.b.imag();
                        default: {
                            Complex d = s.b - s.a;
                            double L2 = std::norm(d);
                            double t = L2 == 0.0
                                           ? 0.0
                                           : std::clamp(((p - s.a) * std::conj(d)).real() / L2,
                                                        0.0, 1.0);
                            return std::abs(p - (s.a + t * d)) <= s.r1 + eps;
                        }
                    }
                    return false;
                };
                if (!inside(target, w))
                    throw RangeViolationError("image leaves the target set at eps = " +
                                              std::to_string(eps));
            }
        }
    }

    if (v.is_poly() && u.is_poly()) {
        const CoeffMap& uu = u.as_poly().coeffs;
        const Rational cap = any_cap(uu);
        CoeffMap ubar;
        for (const auto& [k, c] : uu) ubar.emplace(std::make_pair(k.second, k.first), conj(c));
        CoeffMap out;
        for (const auto& [k, c] : v.as_poly().coeffs) {
            CoeffMap term = fp_mul(fp_pow(uu, k.first, cap), fp_pow(ubar, k.second, cap));
            for (auto& [tk, tc] : term) tc = c * tc;
            out = fp_add(out, term, false);
        }
        GenFunction r = GenFunction::poly(std::move(out), v.label + " after " + u.label);
        r.domain = A;
        return r;
    }

    SampledCallable sc;
    sc.center = AsymptoticScalar::zero();
    sc.label = v.label + " after " + u.label;
    sc.f = [vv = v, uu = u](double eps, Complex z) {
        return vv.eval_net(eps, uu.eval_net(eps, z));
    };
    GenFunction r;
    r.rep = std::move(sc);
    r.label = sc.label;
    r.domain = A;
    return r;
}

namespace {

GinftyReport ginfty_from_onset(const OnSetReport& rep, int n_max) {
    GinftyReport out;
    int worst_n = 0;
    for (const auto& oc : rep.per_order) {
        if (oc.cls.kind == Classification::Kind::Neither) {
            out.yes = false;
            out.witness_order = oc.p + oc.q;
            out.detail = "order (" + std::to_string(oc.p) + "," + std::to_string(oc.q) +
                         ") is not moderate";
            return out;
        }
        worst_n = std::max(worst_n, oc.cls.n);
    }
    if (worst_n > n_max) {
        out.yes = false;
        out.witness_order = -1;
        out.detail = "uniform exponent would exceed " + std::to_string(n_max);
        return out;
    }
    out.yes = true;
    out.N = worst_n;
    return out;
}

}  // namespace

GinftyReport is_Ginfty(const GenFunction& u, const InternalSetRep& set, int k_max,
                       const Config& cfg) {
    auto bounded = is_sharply_bounded(set, cfg.grid, cfg.oracle);
    if (!bounded.bounded)
        throw UnsupportedOperationError("uniform moderation needs a sharply bounded set");
    return ginfty_from_onset(classify_on_set(u, set, k_max, 1, cfg), cfg.oracle.n_max);
}

GinftyReport is_Ginfty(const GenFunction& u, const SharpBall& ball, int k_max, const Config& cfg) {
    GinftyReport out;
    if (u.is_series()) {
        const PowerSeries& s = u.as_series().series;
        // shells rho^a just inside the ball, plus the center (n = 0 term only)
        const double base = (std::floor(-std::log(ball.r) * 10.0) + 1.0) / 10.0;
        const bool lawful = s.law.has_value();
        const int probe_k = lawful ? 512 : k_max;
        const int probe_n = lawful ? 512 : s.stored() - 1;
        auto g_of = [&](int n) -> std::optional<double> {
            if (lawful) {
                if (!s.law->in_range(n)) return std::nullopt;
                return s.law->g(n);
            }
            if (n >= s.stored() || s.a(n).empty()) return std::nullopt;
            return to_double(s.a(n).leading_exponent());
        };
        int worst = 0;
        for (int k = 0; k <= probe_k; ++k) {
            double need = 0.0;
            if (auto gk = g_of(k)) need = std::max(need, -*gk);  // value at the center
            for (int shell = 0; shell < 8; ++shell) {
                const double a = base + 0.25 * shell;
                for (int n = 0; n <= probe_n; ++n) {
                    auto gnk = g_of(n + k);
                    if (!gnk) continue;
                    need = std::max(need, -(*gnk + a * n));
                }
            }
            const int N_k = static_cast<int>(std::ceil(need - 1e-9));
            if (N_k > cfg.oracle.n_max) {
                out.yes = false;
                out.witness_order = k;
                out.detail = "order " + std::to_string(k) + " forces the exponent to " +
                             std::to_string(N_k) + (lawful ? "" : " (stored prefix only)");
                return out;
            }
            worst = std::max(worst, N_k);
        }
        out.yes = true;
        out.N = worst;
        if (!lawful) out.detail = "estimated from the stored prefix";
        return out;
    }
    if (u.is_poly()) {
        // derivatives vanish beyond the degree, so the check is complete
        const auto& fp = u.as_poly();
        auto pts = sample_ball_points(ball, 9);
        int worst = 0;
        for (int p = 0; p <= fp.max_z_degree(); ++p)
            for (int q = 0; q <= fp.max_conj_degree(); ++q) {
                GenFunction d = derivative_mixed(u, p, q);
                for (const auto& z : pts) {
                    GenValue v = eval(d, z, cfg);
                    if (v.value.empty()) continue;
                    worst = std::max(worst, static_cast<int>(std::ceil(
                                                -to_double(v.value.leading_exponent()) - 1e-9)));
                }
            }
        worst = std::max(worst, 0);
        if (worst > cfg.oracle.n_max) {
            out.yes = false;
            out.detail = "uniform exponent would exceed " + std::to_string(cfg.oracle.n_max);
            return out;
        }
        out.yes = true;
        out.N = worst;
        return out;
    }
    const auto& sc = u.as_sampled();
    const int orders = sc.has_poly() ? k_max : 0;
    SampledNet net;
    net.grid = cfg.grid;
    int worst = 0;
    for (int k = 0; k <= orders; ++k) {
        GenFunction d = k == 0 ? u : derivative_mixed(u, k, 0);
        SampledNet sup;
        sup.grid = cfg.grid;
        sup.label = "sup over ball shells, order " + std::to_string(k);
        const double base = (std::floor(-std::log(ball.r) * 10.0) + 1.0) / 10.0;
        for (int j = 0; j < cfg.grid.size(); ++j) {
            const double eps = cfg.grid.eps(j);
            const Complex c = ball.center.eval_complex(eps);
            double mx = 0.0;
            bool bad = false;
            for (int shell = 0; shell < 8 && !bad; ++shell) {
                const double r = std::pow(eps, base + 0.25 * shell);
                for (int t = 0; t < 4; ++t) {
                    double val =
                        std::abs(d.eval_net(eps, c + std::polar(r, 1.5707963267948966 * t)));
                    if (!std::isfinite(val)) {
                        bad = true;
                        break;
                    }
                    mx = std::max(mx, val);
                }
            }
            double central = std::abs(d.eval_net(eps, c));
            if (std::isfinite(central)) mx = std::max(mx, central);
            sup.points.push_back({eps, cfg.grid.log_eps(j), Complex(mx, 0.0),
                                  mx == 0.0 ? -std::numeric_limits<double>::infinity()
                                            : std::log(mx),
                                  bad});
        }
        Classification cls = classify(sup, cfg.oracle);
        if (cls.kind == Classification::Kind::Neither) {
            out.yes = false;
            out.witness_order = k;
            out.detail = "order " + std::to_string(k) + " is not moderate on the ball";
            return out;
        }
        worst = std::max(worst, cls.n);
    }
    if (worst > cfg.oracle.n_max) {
        out.yes = false;
        out.detail = "uniform exponent would exceed " + std::to_string(cfg.oracle.n_max);
        return out;
    }
    out.yes = true;
    out.N = worst;
    if (!sc.has_poly()) out.detail = "bare callable: order zero only";
    return out;
}

std::string to_string(const GenFunction& u) {
    if (!u.label.empty()) return u.label;
    if (u.is_poly()) {
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : u.as_poly().coeffs) {
            if (c.empty()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << to_string(c) << ")";
            if (k.first) os << "*z^" << k.first;
            if (k.second) os << "*conj(z)^" << k.second;
        }
        return first ? "0" : os.str();
    }
    if (u.is_series()) return "series " + u.as_series().series.label;
    return "sampled net";
}

}  // namespace rhosharp
