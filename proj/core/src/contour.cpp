#include "rhosharp/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rhosharp/errors.hpp"

namespace rhosharp {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Node-doubling disagreement above this fraction of the integrand mass means
// the fixed node count cannot resolve the integrand. Circle trapezoids are
// periodic and Gauss panels converge geometrically, so healthy runs sit many
// orders below 1e-6. A bare sampled path only gets the plain trapezoid with
// its h^2 error (about 1e-6 of mass at 1024 nodes), hence the looser bound;
// the returned value is Richardson-extrapolated there, which cancels the h^2
// term.
constexpr double kQuadAgreeTolSpectral = 1e-6;
constexpr double kQuadAgreeTolTrapezoid = 1e-4;

// Quadrature values below this multiple of machine rounding on the integrand
// mass are indistinguishable from an exact zero and snap to one.
constexpr double kQuadZeroSnap = 64.0 * std::numeric_limits<double>::epsilon();

// 16-point Gauss-Legendre rule on [-1, 1], positive half; mirrored in use.
constexpr double kGaussX[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                               0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                               0.9445750230732326, 0.9894009349916499};
constexpr double kGaussW[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                               0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                               0.0622535239386479, 0.0271524594117541};

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double out = 1.0;
    for (int i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
    return out;
}

double factorial(int k) {
    double out = 1.0;
    for (int i = 2; i <= k; ++i) out *= i;
    return out;
}

int segment_count(const PolylinePath& pl) {
    return pl.closed ? static_cast<int>(pl.vertices.size())
                     : static_cast<int>(pl.vertices.size()) - 1;
}

const GenComplex& segment_end(const PolylinePath& pl, int i) {
    return pl.vertices[(i + 1) % pl.vertices.size()];
}

std::string format(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Path point at a classical parameter value, exact in the generalized data.
GenComplex parametric_point(const GenPath& g, double t) {
    if (g.is_circle()) {
        const CirclePath& c = g.as_circle();
        return c.center + std::polar(1.0, kTwoPi * c.orientation * t) * c.radius;
    }
    const PolylinePath& pl = g.as_polyline();
    const int n = segment_count(pl);
    const double u = t * n;
    int i = std::min(static_cast<int>(std::floor(u)), n - 1);
    if (i < 0) i = 0;
    const double lam = u - i;
    const GenComplex& A = pl.vertices[i];
    if (lam == 0.0) return A;
    if (lam == 1.0) return segment_end(pl, i);
    return A + Complex(lam) * (segment_end(pl, i) - A);
}

// exp(2 pi i o t) for a generalized parameter: classical leading part through
// the complex exponential, infinitesimal remainder through its power series
// (which terminates at the cap because the remainder's valuation is positive).
AsymptoticScalar phase_factor(const AsymptoticScalar& t, int orientation) {
    Complex t0{};
    if (!t.empty() && t.leading_exponent() == Rational(0)) t0 = t.leading_coeff();
    const AsymptoticScalar t_inf = t - AsymptoticScalar::constant(t0, t.cap());
    const Complex iw{0.0, kTwoPi * orientation};
    AsymptoticScalar out = AsymptoticScalar::constant(std::exp(iw * t0), t.cap());
    if (t_inf.empty()) return out;
    const AsymptoticScalar x = iw * t_inf;
    AsymptoticScalar acc = AsymptoticScalar::constant(1.0, x.cap());
    AsymptoticScalar term = AsymptoticScalar::constant(1.0, x.cap());
    for (int m = 1; m <= 4096 && !term.empty(); ++m) {
        term = Complex(1.0 / m) * (term * x);
        acc = acc + term;
    }
    if (!term.empty()) throw Error("phase series for the path parameter did not settle");
    return out * acc;
}

GenComplex polyline_param_point(const PolylinePath& pl, const AsymptoticScalar& t) {
    const int n = segment_count(pl);
    const AsymptoticScalar u = Complex(static_cast<double>(n)) * t;
    double u0 = 0.0;
    if (!u.empty() && u.leading_exponent() == Rational(0)) u0 = u.leading_coeff().real();
    int i = static_cast<int>(std::floor(u0 + 1e-12));
    if (i > n - 1) i = n - 1;
    if (i < 0) i = 0;
    AsymptoticScalar lam =
        u - AsymptoticScalar::constant(static_cast<double>(i), u.cap());
    // a negative infinitesimal remainder at a breakpoint belongs to the
    // segment on the left
    if (!lam.empty() && lam.leading_coeff().real() < 0.0 && i > 0) {
        --i;
        lam = lam + AsymptoticScalar::constant(1.0, lam.cap());
    }
    const GenComplex& A = pl.vertices[i];
    if (lam.empty()) return A;
    if (equal_up_to_cap(lam, AsymptoticScalar::constant(1.0, lam.cap())))
        return segment_end(pl, i);
    return A + lam * (segment_end(pl, i) - A);
}

SampledNet net_from_values(const GridSpec& grid, const std::vector<Complex>& values,
                           std::string label) {
    SampledNet net{grid, {}, std::move(label)};
    net.points.reserve(grid.size());
    for (int idx = 0; idx < grid.size(); ++idx) {
        NetPoint p;
        p.eps = grid.eps(idx);
        p.log_eps = grid.log_eps(idx);
        p.value = values[static_cast<std::size_t>(idx)];
        if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag())) {
            p.overflow = true;
            p.log_abs = kInf;
        } else {
            const double a = std::abs(p.value);
            p.log_abs = a == 0.0 ? -kInf : std::log(a);
        }
        net.points.push_back(p);
    }
    return net;
}

// Membership of a concrete point in a concrete shape, with an absolute slack
// proportional to the shape's size.
bool contains_concrete(const ConcreteShape& s, Complex z) {
    const double d1 = std::abs(z - s.a);
    switch (s.kind) {
        case ShapeKind::Disc:
            return d1 <= s.r1 + 1e-9 * (1.0 + std::abs(s.a) + s.r1);
        case ShapeKind::Circle:
            return std::abs(d1 - s.r1) <= 1e-9 * (1.0 + std::abs(s.a) + s.r1);
        case ShapeKind::Annulus: {
            const double tol = 1e-9 * (1.0 + std::abs(s.a) + s.r2);
            return s.r1 - tol <= d1 && d1 <= s.r2 + tol;
        }
        case ShapeKind::Rectangle: {
            const double tol = 1e-9 * (1.0 + std::abs(s.a) + std::abs(s.b));
            return s.a.real() - tol <= z.real() && z.real() <= s.b.real() + tol &&
                   s.a.imag() - tol <= z.imag() && z.imag() <= s.b.imag() + tol;
        }
        case ShapeKind::Segment: {
            const Complex d = s.b - s.a;
            const double len2 = std::norm(d);
            double lam = len2 == 0.0 ? 0.0
                                     : ((z - s.a).real() * d.real() + (z - s.a).imag() * d.imag()) /
                                           len2;
            lam = std::clamp(lam, 0.0, 1.0);
            return std::abs(z - (s.a + lam * d)) <= 1e-9 * (1.0 + std::abs(s.a) + std::abs(s.b));
        }
    }
    return false;
}

void ensure_path_in_domain(const GenFunction& u, const GenPath& g, const Config& cfg) {
    if (!u.domain) return;
    const InternalSetRep& dom = *u.domain;
    if (!g.is_sampled()) {
        std::vector<double> ts;
        for (int i = 0; i <= 32; ++i) ts.push_back(i / 32.0);
        if (g.is_polyline()) {
            const int n = segment_count(g.as_polyline());
            for (int i = 0; i <= n; ++i) ts.push_back(static_cast<double>(i) / n);
        }
        for (double t : ts) {
            const Membership m = contains(dom, parametric_point(g, t));
            if (m == Membership::No)
                throw DomainViolationError("path point at t=" + format(t) +
                                           " lies outside the attached domain");
            if (m == Membership::Undecided)
                throw DomainViolationError("membership of the path point at t=" + format(t) +
                                           " is undecided");
        }
        return;
    }
    const int n = cfg.grid.size();
    const int window = std::min(cfg.oracle.window, n);
    for (int idx = n - window; idx < n; idx += 3) {
        const double eps = cfg.grid.eps(idx);
        const ConcreteShape shape = concretize(dom, eps);
        if (shape.degenerate)
            throw DomainViolationError("attached domain degenerates at eps=" + format(eps));
        for (int i = 0; i <= 64; ++i) {
            const Complex z = g.eval_net(eps, i / 64.0);
            if (!contains_concrete(shape, z))
                throw DomainViolationError("path point at t=" + format(i / 64.0) +
                                           " leaves the attached domain at eps=" + format(eps));
        }
    }
}

// Closed form for one circle: with z = a + r e^{i o theta}, a monomial
// z^p conj(z)^q picks up exactly the binomial cross terms whose phase cancels
// the e^{i o theta} of dz, leaving 2 pi i o sum_j C(p,j) C(q,j+1)
// a^{p-j} conj(a)^{q-j-1} r^{2j+2}.
GenValue exact_circle_integral(const FixedPoly& P, const CirclePath& c, const Config& cfg) {
    const GenComplex abar = conj(c.center);
    AsymptoticScalar acc = AsymptoticScalar::zero(cfg.cap);
    for (const auto& [pq, coeff] : P.coeffs) {
        const auto& [p, q] = pq;
        if (coeff.empty()) continue;
        for (int j = 0; j <= std::min(p, q - 1); ++j) {
            const double w = binom(p, j) * binom(q, j + 1);
            acc = acc + Complex(w) * (coeff * pow(c.center, p - j) * pow(abar, q - j - 1) *
                                      pow(c.radius, 2 * j + 2));
        }
    }
    GenValue out;
    out.value = Complex(0.0, kTwoPi * c.orientation) * acc;
    return out;
}

GenValue exact_polyline_integral(const FixedPoly& P, const PolylinePath& pl, const Config& cfg) {
    const int n = segment_count(pl);
    AsymptoticScalar acc = AsymptoticScalar::zero(cfg.cap);
    for (const auto& [pq, coeff] : P.coeffs) {
        const auto& [p, q] = pq;
        if (coeff.empty()) continue;
        if (q == 0) {
            // antiderivative z^{p+1}/(p+1); a closed chain telescopes to zero
            if (pl.closed) continue;
            acc = acc + Complex(1.0 / (p + 1)) *
                            (coeff * (pow(pl.vertices.back(), p + 1) -
                                      pow(pl.vertices.front(), p + 1)));
            continue;
        }
        for (int s = 0; s < n; ++s) {
            const GenComplex& A = pl.vertices[s];
            const GenComplex B = segment_end(pl, s) - A;
            if (B.empty()) continue;
            const GenComplex Ab = conj(A), Bb = conj(B);
            AsymptoticScalar inner = AsymptoticScalar::zero(cfg.cap);
            for (int j = 0; j <= p; ++j)
                for (int k = 0; k <= q; ++k) {
                    const double w = binom(p, j) * binom(q, k) / (j + k + 1);
                    inner = inner + Complex(w) * (pow(A, p - j) * pow(B, j) * pow(Ab, q - k) *
                                                  pow(Bb, k));
                }
            acc = acc + coeff * (inner * B);
        }
    }
    GenValue out;
    out.value = acc;
    return out;
}

GenValue exact_integral(const GenFunction& u, const GenPath& g, const Config& cfg) {
    if (!u.is_poly())
        throw UnsupportedOperationError(
            "exact integration needs a fixed polynomial integrand; use quadrature");
    if (g.is_circle()) return exact_circle_integral(u.as_poly(), g.as_circle(), cfg);
    if (g.is_polyline()) return exact_polyline_integral(u.as_poly(), g.as_polyline(), cfg);
    throw UnsupportedOperationError("exact integration needs a parametric path");
}

// One pass of the composite rule at a fixed epsilon. `mass` collects
// sum |f| |gamma'| / nodes, the natural magnitude of the integration.
Complex quad_once(const std::function<Complex(double, Complex)>& f, const GenPath& g, double eps,
                  int nodes, double& mass) {
    Complex I{};
    mass = 0.0;
    if (g.is_circle()) {
        const CirclePath& c = g.as_circle();
        const Complex a = c.center.eval_complex(eps);
        const double r = c.radius.eval_real(eps);
        for (int k = 0; k < nodes; ++k) {
            const Complex ph = std::polar(1.0, kTwoPi * c.orientation * k / nodes);
            const Complex dz = Complex(0.0, kTwoPi * c.orientation * r) * ph / double(nodes);
            const Complex v = f(eps, a + r * ph) * dz;
            I += v;
            mass += std::abs(v);
        }
        return I;
    }
    if (g.is_polyline()) {
        const PolylinePath& pl = g.as_polyline();
        const int n = segment_count(pl);
        const int panels = std::max(1, nodes / (16 * n));
        for (int s = 0; s < n; ++s) {
            const Complex A = pl.vertices[s].eval_complex(eps);
            const Complex B = segment_end(pl, s).eval_complex(eps) - A;
            for (int pnl = 0; pnl < panels; ++pnl) {
                const double lo = static_cast<double>(pnl) / panels;
                const double half = 0.5 / panels;
                for (int k = 0; k < 8; ++k)
                    for (int sign : {-1, 1}) {
                        const double lam = lo + half + sign * kGaussX[k] * half;
                        const Complex v = f(eps, A + lam * B) * B * (kGaussW[k] * half);
                        I += v;
                        mass += std::abs(v);
                    }
            }
        }
        return I;
    }
    // composite trapezoid; piecewise C^1 is all a bare parametrization promises
    for (int k = 0; k <= nodes; ++k) {
        const double t = static_cast<double>(k) / nodes;
        const double w = (k == 0 || k == nodes) ? 0.5 / nodes : 1.0 / nodes;
        const Complex v = f(eps, g.eval_net(eps, t)) * g.derivative_net(eps, t) * w;
        I += v;
        mass += std::abs(v);
    }
    return I;
}

struct QuadOutcome {
    SampledNet value;  // doubled-node integrals, junk below resolution snapped to 0
    SampledNet scale;  // integrand mass, the reference for relative verdicts
};

QuadOutcome quad_integral(const std::function<Complex(double, Complex)>& f, const GenPath& g,
                          const Config& cfg, const std::string& label) {
    const int n = cfg.grid.size();
    std::vector<Complex> refined(static_cast<std::size_t>(n));
    std::vector<Complex> masses(static_cast<std::size_t>(n));
    const int window = std::min(cfg.oracle.window, n);
    const double agree_tol = g.is_sampled() ? kQuadAgreeTolTrapezoid : kQuadAgreeTolSpectral;
    for (int idx = 0; idx < n; ++idx) {
        const double eps = cfg.grid.eps(idx);
        double m1 = 0.0, m2 = 0.0;
        const Complex coarse = quad_once(f, g, eps, cfg.quad_nodes, m1);
        Complex fine = quad_once(f, g, eps, 2 * cfg.quad_nodes, m2);
        if (std::isfinite(m2)) {
            const double err = std::abs(fine - coarse);
            if (idx >= n - window && err > agree_tol * m2)
                throw QuadratureUnstableError(
                    "node doubling moves the integral by " + format(err) + " (" +
                    format(err / (m2 > 0.0 ? m2 : 1.0)) + " of the integrand mass) at eps=" +
                    format(eps) + "; raise quad_nodes");
            if (g.is_sampled()) fine = (4.0 * fine - coarse) / 3.0;
            if (std::abs(fine) <= kQuadZeroSnap * m2) fine = Complex{};
        }
        refined[static_cast<std::size_t>(idx)] = fine;
        masses[static_cast<std::size_t>(idx)] = Complex(m2);
    }
    return {net_from_values(cfg.grid, refined, label),
            net_from_values(cfg.grid, masses, label + "/mass")};
}

GenValue quad_value(const std::function<Complex(double, Complex)>& f, const GenPath& g,
                    const Config& cfg, const std::string& label) {
    QuadOutcome q = quad_integral(f, g, cfg, label);
    GenValue out;
    out.provenance = Provenance::Sampled;
    out.cls = classify(q.value, cfg.oracle);
    out.net = std::move(q.value);
    return out;
}

HolomorphyReport holomorphy_for_homotopy(const GenFunction& u, const Config& cfg) {
    if (u.domain) return dbar_test(u, *u.domain, cfg);
    HolomorphyReport h;
    if (u.is_poly()) {
        h.holomorphic = u.as_poly().pure_z();
        h.detail = h.holomorphic ? "no conjugate monomial in the expansion"
                                 : "a conjugate monomial survives in the expansion";
        return h;
    }
    if (u.is_series() || (u.is_sampled() && u.as_sampled().has_poly())) {
        h.holomorphic = true;
        h.detail = "representative is polynomial in z at every epsilon";
        return h;
    }
    throw UnsupportedOperationError(
        "a bare integrand needs an attached domain for the holomorphy test");
}

void ensure_closed(const GenPath& g, const Config& cfg) {
    if (!g.closed()) throw UnsupportedOperationError("homotopy endpoints must be closed paths");
    if (!g.is_sampled()) return;
    // the flag is a promise; spot-check it on the tail
    const int n = cfg.grid.size();
    for (int idx : {n - 1, n - 8, n - 16}) {
        if (idx < 0) continue;
        const double eps = cfg.grid.eps(idx);
        const Complex z0 = g.eval_net(eps, 0.0), z1 = g.eval_net(eps, 1.0);
        if (std::abs(z0 - z1) > 1e-9 * (1.0 + std::abs(z0)))
            throw UnsupportedOperationError("sampled path does not close: gap " +
                                            format(std::abs(z0 - z1)) + " at eps=" + format(eps));
    }
}

}  // namespace

GenPath GenPath::circle(GenComplex center, AsymptoticScalar radius, int orientation) {
    if (orientation != 1 && orientation != -1)
        throw DegenerateShapeError("circle orientation must be +1 or -1");
    if (radius.empty() || !radius.is_real() || radius.leading_coeff().real() <= 0.0)
        throw DegenerateShapeError("circle radius needs a positive real leading term");
    GenPath g;
    g.label = "circle";
    g.rep = CirclePath{std::move(center), std::move(radius), orientation};
    return g;
}

GenPath GenPath::polyline(std::vector<GenComplex> vertices, bool closed) {
    if (vertices.size() < 2) throw DegenerateShapeError("a polyline needs at least two vertices");
    GenPath g;
    g.label = "polyline";
    g.rep = PolylinePath{std::move(vertices), closed};
    return g;
}

GenPath GenPath::sampled(std::function<Complex(double, double)> gamma,
                         std::function<Complex(double, double)> dgamma, bool closed,
                         std::string label) {
    if (!gamma) throw DegenerateShapeError("sampled path needs a parametrization");
    GenPath g;
    g.label = label;
    g.rep = SampledPath{std::move(gamma), std::move(dgamma), closed, std::move(label)};
    return g;
}

bool GenPath::closed() const {
    if (is_circle()) return true;
    if (is_polyline()) return as_polyline().closed;
    return as_sampled().is_closed;
}

GenPath GenPath::reversed() const {
    GenPath g = *this;
    if (is_circle()) {
        std::get<CirclePath>(g.rep).orientation = -as_circle().orientation;
        return g;
    }
    if (is_polyline()) {
        auto& pl = std::get<PolylinePath>(g.rep);
        std::reverse(pl.vertices.begin(), pl.vertices.end());
        return g;
    }
    const SampledPath& sp = as_sampled();
    SampledPath rev;
    rev.gamma = [f = sp.gamma](double eps, double t) { return f(eps, 1.0 - t); };
    if (sp.dgamma) rev.dgamma = [d = sp.dgamma](double eps, double t) { return -d(eps, 1.0 - t); };
    rev.is_closed = sp.is_closed;
    rev.label = sp.label + "/reversed";
    g.rep = std::move(rev);
    g.label = label + "/reversed";
    return g;
}

Complex GenPath::eval_net(double eps, double t) const {
    t = std::clamp(t, 0.0, 1.0);
    if (is_circle()) {
        const CirclePath& c = as_circle();
        return c.center.eval_complex(eps) +
               c.radius.eval_real(eps) * std::polar(1.0, kTwoPi * c.orientation * t);
    }
    if (is_polyline()) {
        const PolylinePath& pl = as_polyline();
        const int n = segment_count(pl);
        const double u = t * n;
        const int i = std::min(static_cast<int>(std::floor(u)), n - 1);
        const Complex A = pl.vertices[i].eval_complex(eps);
        const Complex B = segment_end(pl, i).eval_complex(eps);
        return A + (u - i) * (B - A);
    }
    return as_sampled().gamma(eps, t);
}

Complex GenPath::derivative_net(double eps, double t) const {
    t = std::clamp(t, 0.0, 1.0);
    if (is_circle()) {
        const CirclePath& c = as_circle();
        const double r = c.radius.eval_real(eps);
        return Complex(0.0, kTwoPi * c.orientation * r) *
               std::polar(1.0, kTwoPi * c.orientation * t);
    }
    if (is_polyline()) {
        const PolylinePath& pl = as_polyline();
        const int n = segment_count(pl);
        const int i = std::min(static_cast<int>(std::floor(t * n)), n - 1);
        return static_cast<double>(n) *
               (segment_end(pl, i).eval_complex(eps) - pl.vertices[i].eval_complex(eps));
    }
    const SampledPath& sp = as_sampled();
    if (sp.dgamma) return sp.dgamma(eps, t);
    const double h = 1e-6;
    const double t0 = std::max(0.0, t - h), t1 = std::min(1.0, t + h);
    return (sp.gamma(eps, t1) - sp.gamma(eps, t0)) / (t1 - t0);
}

GenValue path_eval(const GenPath& g, const GenComplex& t, const Config& cfg) {
    if (!t.is_real()) throw OutOfParameterError("path parameter has an imaginary part");
    const AsymptoticScalar tr = t.real_part();
    const AsymptoticScalar zero = AsymptoticScalar::zero(t.cap());
    const AsymptoticScalar one = AsymptoticScalar::constant(1.0, t.cap());
    if (compare(tr, zero) == Ordering::Less)
        throw OutOfParameterError("path parameter below 0: " + to_string(tr));
    if (compare(tr, one) == Ordering::Greater)
        throw OutOfParameterError("path parameter above 1: " + to_string(tr));
    GenValue out;
    if (g.is_circle()) {
        const CirclePath& c = g.as_circle();
        out.value = c.center + c.radius * phase_factor(tr, c.orientation);
        return out;
    }
    if (g.is_polyline()) {
        out.value = polyline_param_point(g.as_polyline(), tr);
        return out;
    }
    out.provenance = Provenance::Sampled;
    out.net = sample(
        [&](double eps) { return g.eval_net(eps, tr.eval_real(eps)); }, cfg.grid,
        g.label + "(t)");
    out.cls = classify(*out.net, cfg.oracle);
    return out;
}

GenValue path_integral(const GenFunction& u, const GenPath& g, IntegrationMode mode,
                       const Config& cfg) {
    ensure_path_in_domain(u, g, cfg);
    if (mode == IntegrationMode::Exact) return exact_integral(u, g, cfg);
    return quad_value([&u](double eps, Complex z) { return u.eval_net(eps, z); }, g, cfg,
                      "integral over " + to_string(g));
}

GenValue cauchy_integral(const GenFunction& u, const GenComplex& a, const AsymptoticScalar& r,
                         const GenComplex& z, int k, IntegrationMode mode, const Config& cfg) {
    if (k < 0) throw UnsupportedOperationError("derivative order must be nonnegative");
    if (r.empty() || !r.is_real() || r.leading_coeff().real() <= 0.0)
        throw DegenerateShapeError("circle radius needs a positive real leading term");
    const Ordering inside = compare(r * r, abs_squared(z - a));
    if (inside != Ordering::Greater)
        throw PointNotWellInsideError("point not well inside the circle: compare(r^2, |z-a|^2) = " +
                                      to_string(inside));
    if (u.domain) {
        const Membership m = contains(*u.domain, z);
        if (m != Membership::Yes)
            throw DomainViolationError("evaluation point is not certified inside the domain");
    }
    const GenPath circ = GenPath::circle(a, r, 1);
    if (mode == IntegrationMode::Exact) {
        ensure_path_in_domain(u, circ, cfg);
        // expand around z: the kernel keeps exactly the k-th coefficient,
        // scaled by k!
        if (u.is_poly()) {
            const FixedPoly& P = u.as_poly();
            if (!P.pure_z())
                throw UnsupportedOperationError(
                    "the Cauchy kernel expansion needs a holomorphic polynomial integrand");
            AsymptoticScalar acc = AsymptoticScalar::zero(cfg.cap);
            for (const auto& [pq, coeff] : P.coeffs) {
                const int p = pq.first;
                if (p < k || coeff.empty()) continue;
                acc = acc + Complex(binom(p, k)) * (coeff * pow(z, p - k));
            }
            GenValue out;
            out.value = Complex(factorial(k)) * acc;
            return out;
        }
        if (u.is_series()) return eval(derivative(u, k), z, cfg);
        throw UnsupportedOperationError(
            "exact mode supports polynomial and series integrands; use quadrature");
    }
    const double kfact = factorial(k);
    auto f = [&u, &z, k, kfact](double eps, Complex zeta) {
        const Complex d = zeta - z.eval_complex(eps);
        Complex dk{1.0, 0.0};
        for (int i = 0; i <= k; ++i) dk *= d;
        return u.eval_net(eps, zeta) * Complex(0.0, -kfact / kTwoPi) / dk;
    };
    return quad_value(f, circ, cfg, "cauchy integral k=" + std::to_string(k));
}

Complex ConvexHomotopy::eval_net(double eps, double t, double s) const {
    const Complex z0 = from.eval_net(eps, t);
    return z0 + s * (to.eval_net(eps, t) - z0);
}

HomotopyReport homotopy_invariance_check(const GenFunction& u, const ConvexHomotopy& H,
                                         const Config& cfg) {
    ensure_closed(H.from, cfg);
    ensure_closed(H.to, cfg);

    const bool parametric = !H.from.is_sampled() && !H.to.is_sampled();
    if (u.domain) {
        if (parametric) {
            for (int i = 0; i <= 16; ++i)
                for (int j = 0; j <= 8; ++j) {
                    const double t = i / 16.0, s = j / 8.0;
                    const GenComplex p0 = parametric_point(H.from, t);
                    const GenComplex p1 = parametric_point(H.to, t);
                    const GenComplex h = p0 + Complex(s) * (p1 - p0);
                    const Membership m = contains(*u.domain, h);
                    if (m == Membership::No)
                        throw HomotopyLeavesDomainError("homotopy point at (t=" + format(t) +
                                                        ", s=" + format(s) +
                                                        ") leaves the domain");
                    if (m == Membership::Undecided)
                        throw HomotopyLeavesDomainError("homotopy membership undecided at (t=" +
                                                        format(t) + ", s=" + format(s) + ")");
                }
        } else {
            const int n = cfg.grid.size();
            const int window = std::min(cfg.oracle.window, n);
            for (int idx = n - window; idx < n; idx += 3) {
                const double eps = cfg.grid.eps(idx);
                const ConcreteShape shape = concretize(*u.domain, eps);
                if (shape.degenerate)
                    throw DomainViolationError("attached domain degenerates at eps=" +
                                               format(eps));
                for (int i = 0; i <= 16; ++i)
                    for (int j = 0; j <= 8; ++j) {
                        const double t = i / 16.0, s = j / 8.0;
                        if (!contains_concrete(shape, H.eval_net(eps, t, s)))
                            throw HomotopyLeavesDomainError(
                                "homotopy point at (t=" + format(t) + ", s=" + format(s) +
                                ") leaves the domain at eps=" + format(eps));
                    }
            }
        }
    }

    HomotopyReport rep;
    const HolomorphyReport h = holomorphy_for_homotopy(u, cfg);
    if (!h.holomorphic) {
        rep.detail = "integrand fails the conjugate-direction test: " + h.detail;
        return rep;
    }
    rep.holomorphic = true;

    if (u.is_poly() && parametric) {
        rep.from_integral = exact_integral(u, H.from, cfg);
        rep.to_integral = exact_integral(u, H.to, cfg);
        rep.equal = equal_up_to_cap(rep.from_integral.value, rep.to_integral.value);
        rep.detail = rep.equal ? "exact integrals agree up to the cap"
                               : "exact integrals differ: " + to_string(rep.from_integral.value) +
                                     " vs " + to_string(rep.to_integral.value);
        return rep;
    }

    auto f = [&u](double eps, Complex z) { return u.eval_net(eps, z); };
    QuadOutcome q0 = quad_integral(f, H.from, cfg, "integral over " + to_string(H.from));
    QuadOutcome q1 = quad_integral(f, H.to, cfg, "integral over " + to_string(H.to));
    SampledNet diff = net_difference(q0.value, q1.value);
    SampledNet scale = q0.scale;
    scale.label = "integrand mass";
    for (std::size_t i = 0; i < scale.points.size(); ++i) {
        const double m = std::max(std::abs(q0.scale.points[i].value),
                                  std::abs(q1.scale.points[i].value));
        scale.points[i].value = Complex(m);
        scale.points[i].overflow = !std::isfinite(m);
        scale.points[i].log_abs = scale.points[i].overflow ? kInf
                                  : m == 0.0               ? -kInf
                                                           : std::log(m);
    }
    const Classification cls = classify_relative(diff, scale, cfg.oracle, 1e-9);
    rep.equal = cls.is_negligible();
    auto wrap = [&cfg](QuadOutcome& q) {
        GenValue v;
        v.provenance = Provenance::Sampled;
        v.cls = classify(q.value, cfg.oracle);
        v.net = std::move(q.value);
        return v;
    };
    rep.from_integral = wrap(q0);
    rep.to_integral = wrap(q1);
    rep.detail = std::string(rep.equal ? "quadrature integrals agree: "
                                       : "quadrature integrals disagree: ") +
                 to_string(cls);
    return rep;
}

EstimateReport cauchy_estimate_check(const GenFunction& u, const GenComplex& a,
                                     const AsymptoticScalar& r, const GenComplex& z, int k,
                                     const Config& cfg, double lhs_scale) {
    if (k < 0) throw UnsupportedOperationError("derivative order must be nonnegative");
    if (r.empty() || !r.is_real() || r.leading_coeff().real() <= 0.0)
        throw DegenerateShapeError("circle radius needs a positive real leading term");
    const Ordering inside = compare(r * r, abs_squared(z - a));
    if (inside != Ordering::Greater)
        throw PointNotWellInsideError("point not well inside the circle: compare(r^2, |z-a|^2) = " +
                                      to_string(inside));
    const GenFunction Dk = derivative(u, k);
    const double kfact = factorial(k);
    const int n = cfg.grid.size();
    const int window = std::min(cfg.oracle.window, n);

    EstimateReport rep;
    rep.holds = true;
    for (int idx = n - window; idx < n; ++idx) {
        const double eps = cfg.grid.eps(idx);
        const Complex ac = a.eval_complex(eps);
        const double rc = r.eval_real(eps);
        const double lhs = std::abs(Dk.eval_net(eps, z.eval_complex(eps))) * lhs_scale;
        double circle_max = 0.0;
        for (int i = 0; i < cfg.quad_nodes; ++i) {
            const double m =
                std::abs(u.eval_net(eps, ac + rc * std::polar(1.0, kTwoPi * i / cfg.quad_nodes)));
            circle_max = std::max(circle_max, m);
        }
        const double rhs = kfact * std::pow(rc, -k) * circle_max;
        if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
            rep.holds = false;
            if (rep.witness_eps == 0.0) rep.witness_eps = eps;
            rep.worst_ratio = kInf;
            rep.detail = "evaluation overflowed at eps=" + format(eps) +
                         "; the bound is not certifiable there";
            continue;
        }
        const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInf : 0.0);
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
        if (lhs > rhs * kIneqSlack) {
            rep.holds = false;
            if (rep.witness_eps == 0.0) {
                rep.witness_eps = eps;
                rep.detail = "bound fails at eps=" + format(eps) + ": |D^" + std::to_string(k) +
                             " u| = " + format(lhs) + " exceeds k! r^-k max = " + format(rhs);
            }
        }
    }
    if (rep.holds)
        rep.detail = "derivative bound holds on " + std::to_string(window) +
                     " tail points, worst LHS/RHS = " + format(rep.worst_ratio);
    return rep;
}

std::string to_string(const GenPath& g) {
    if (g.is_circle()) {
        const CirclePath& c = g.as_circle();
        return std::string("circle(r=") + to_string(c.radius) +
               (c.orientation == 1 ? ", ccw)" : ", cw)");
    }
    if (g.is_polyline()) {
        const PolylinePath& pl = g.as_polyline();
        return "polyline(" + std::to_string(pl.vertices.size()) +
               (pl.closed ? " vertices, closed)" : " vertices, open)");
    }
    const SampledPath& sp = g.as_sampled();
    return sp.label.empty() ? "sampled path" : "sampled(" + sp.label + ")";
}

}  // namespace rhosharp
