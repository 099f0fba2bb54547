#include "rhosharp/sets.hpp"

#include <algorithm>
#include <cmath>

#include "rhosharp/errors.hpp"

namespace rhosharp {

namespace {

const double kTwoPi = 8.0 * std::atan(1.0);

bool strictly_positive(const AsymptoticScalar& x) {
    return x.is_real() && compare(x, AsymptoticScalar::zero(x.cap())) == Ordering::Greater;
}

// x <= y up to the shared horizon (boundary contact allowed, shapes are closed).
bool leq(const AsymptoticScalar& x, const AsymptoticScalar& y) {
    Ordering o = compare(x, y);
    return o == Ordering::Less || o == Ordering::Equivalent;
}

AsymptoticScalar dist(const GenComplex& p, const GenComplex& q) {
    return sqrt_real(abs_squared(p - q));
}

}  // namespace

InternalSetRep InternalSetRep::disc(GenComplex center, AsymptoticScalar radius) {
    if (!strictly_positive(radius))
        throw DegenerateShapeError("disc radius must be real and strictly positive");
    InternalSetRep s;
    s.kind = ShapeKind::Disc;
    s.a = std::move(center);
    s.r1 = std::move(radius);
    return s;
}

InternalSetRep InternalSetRep::circle(GenComplex center, AsymptoticScalar radius, int orientation) {
    if (!strictly_positive(radius))
        throw DegenerateShapeError("circle radius must be real and strictly positive");
    if (orientation != 1 && orientation != -1)
        throw DegenerateShapeError("circle orientation must be +1 or -1");
    InternalSetRep s;
    s.kind = ShapeKind::Circle;
    s.a = std::move(center);
    s.r1 = std::move(radius);
    s.orientation = orientation;
    return s;
}

InternalSetRep InternalSetRep::annulus(GenComplex center, AsymptoticScalar inner,
                                       AsymptoticScalar outer) {
    if (!strictly_positive(inner))
        throw DegenerateShapeError("annulus inner radius must be real and strictly positive");
    if (compare(outer, inner) != Ordering::Greater)
        throw DegenerateShapeError("annulus outer radius must strictly dominate the inner one");
    InternalSetRep s;
    s.kind = ShapeKind::Annulus;
    s.a = std::move(center);
    s.r1 = std::move(inner);
    s.r2 = std::move(outer);
    return s;
}

InternalSetRep InternalSetRep::rectangle(GenComplex lower_left, GenComplex upper_right) {
    auto d = upper_right - lower_left;
    if (compare(d.real_part(), AsymptoticScalar::zero(d.cap())) != Ordering::Greater ||
        compare(d.imag_part(), AsymptoticScalar::zero(d.cap())) != Ordering::Greater)
        throw DegenerateShapeError("rectangle needs strictly positive width and height");
    InternalSetRep s;
    s.kind = ShapeKind::Rectangle;
    s.a = std::move(lower_left);
    s.b = std::move(upper_right);
    return s;
}

InternalSetRep InternalSetRep::segment(GenComplex from, GenComplex to) {
    if (!is_invertible(to - from))
        throw DegenerateShapeError("segment endpoints coincide up to the horizon");
    InternalSetRep s;
    s.kind = ShapeKind::Segment;
    s.a = std::move(from);
    s.b = std::move(to);
    return s;
}

InternalSetRep InternalSetRep::disc_net_radius(GenComplex center, std::function<double(double)> radius,
                                               std::string label) {
    InternalSetRep s;
    s.kind = ShapeKind::Disc;
    s.a = std::move(center);
    s.net_radius = std::move(radius);
    s.label = std::move(label);
    return s;
}

ConcreteShape concretize(const InternalSetRep& S, double eps) {
    ConcreteShape c;
    c.kind = S.kind;
    c.orientation = S.orientation;
    c.a = S.a.eval_complex(eps);
    c.b = S.b.eval_complex(eps);
    c.r1 = S.has_net_radius() ? S.net_radius(eps) : S.r1.eval_real(eps);
    c.r2 = S.r2.eval_real(eps);
    auto finite = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    switch (S.kind) {
        case ShapeKind::Disc:
        case ShapeKind::Circle:
            c.degenerate = !(finite(c.a) && std::isfinite(c.r1) && c.r1 > 0.0);
            break;
        case ShapeKind::Annulus:
            c.degenerate = !(finite(c.a) && c.r1 > 0.0 && c.r2 > c.r1);
            break;
        case ShapeKind::Rectangle:
            c.degenerate = !(finite(c.a) && finite(c.b) && c.b.real() > c.a.real() &&
                             c.b.imag() > c.a.imag());
            break;
        case ShapeKind::Segment:
            c.degenerate = !(finite(c.a) && finite(c.b) && c.a != c.b);
            c.r1 = 0.0;  // capsule half-width, set by grow()
            break;
    }
    return c;
}

ConcreteShape grow(const ConcreteShape& s, double delta) {
    ConcreteShape g = s;
    switch (s.kind) {
        case ShapeKind::Disc:
            g.r1 = s.r1 + delta;
            break;
        case ShapeKind::Circle:
            if (s.r1 - delta > 0.0) {
                g.kind = ShapeKind::Annulus;
                g.r1 = s.r1 - delta;
                g.r2 = s.r1 + delta;
            } else {
                g.kind = ShapeKind::Disc;
                g.r1 = s.r1 + delta;
            }
            break;
        case ShapeKind::Annulus:
            if (s.r1 - delta > 0.0) {
                g.r1 = s.r1 - delta;
                g.r2 = s.r2 + delta;
            } else {
                g.kind = ShapeKind::Disc;
                g.r1 = s.r2 + delta;
            }
            break;
        case ShapeKind::Rectangle:
            g.a = s.a - Complex{delta, delta};
            g.b = s.b + Complex{delta, delta};
            break;
        case ShapeKind::Segment:
            g.r1 = s.r1 + delta;  // capsule around the segment
            break;
    }
    return g;
}

namespace {

// Membership contribution of the closed constraint x <= y.
Membership below(const AsymptoticScalar& x, const AsymptoticScalar& y) {
    switch (compare(x, y)) {
        case Ordering::Less:
        case Ordering::Equivalent:
            return Membership::Yes;  // closed shapes keep their boundary
        case Ordering::Greater:
            return Membership::No;
        default:
            return Membership::Undecided;
    }
}

Membership combine(Membership x, Membership y) {
    if (x == Membership::No || y == Membership::No) return Membership::No;
    if (x == Membership::Undecided || y == Membership::Undecided) return Membership::Undecided;
    return Membership::Yes;
}

}  // namespace

Membership contains(const InternalSetRep& S, const GenComplex& z) {
    if (S.has_net_radius())
        throw UnsupportedOperationError("membership needs rho-power shape parameters");
    switch (S.kind) {
        case ShapeKind::Disc: {
            auto d2 = abs_squared(z - S.a);
            return below(d2, S.r1 * S.r1);
        }
        case ShapeKind::Circle: {
            auto d = abs_squared(z - S.a) - S.r1 * S.r1;
            Ordering o = compare(d, AsymptoticScalar::zero(d.cap()));
            if (o == Ordering::Equivalent) return Membership::Yes;
            return o == Ordering::Incomparable ? Membership::Undecided : Membership::No;
        }
        case ShapeKind::Annulus: {
            auto d2 = abs_squared(z - S.a);
            return combine(below(d2, S.r2 * S.r2), below(S.r1 * S.r1, d2));
        }
        case ShapeKind::Rectangle: {
            auto zx = z.real_part(), zy = z.imag_part();
            Membership m = below(S.a.real_part(), zx);
            m = combine(m, below(zx, S.b.real_part()));
            m = combine(m, below(S.a.imag_part(), zy));
            m = combine(m, below(zy, S.b.imag_part()));
            return m;
        }
        case ShapeKind::Segment: {
            auto t = (z - S.a) * invert(S.b - S.a);
            if (!t.imag_part().empty()) return Membership::No;
            auto re = t.real_part();
            Membership m = below(AsymptoticScalar::zero(re.cap()), re);
            return combine(m, below(re, AsymptoticScalar::constant(1.0, re.cap())));
        }
    }
    return Membership::Undecided;
}

namespace {

Rational val_bound(const AsymptoticScalar& x) {
    return x.empty() ? x.cap() : x.leading_exponent();
}

// Valuation lower bound of the shape's farthest point from the origin, from
// which sup |z| <= eps^-m follows on the tail.
Rational extent_valuation(const InternalSetRep& S) {
    auto vb = val_bound;
    Rational v = vb(S.a.real_part());
    v = std::min(v, vb(S.a.imag_part()));
    switch (S.kind) {
        case ShapeKind::Disc:
        case ShapeKind::Circle:
            v = std::min(v, vb(S.r1));
            break;
        case ShapeKind::Annulus:
            v = std::min(v, vb(S.r2));
            break;
        case ShapeKind::Rectangle:
        case ShapeKind::Segment:
            v = std::min(v, vb(S.b.real_part()));
            v = std::min(v, vb(S.b.imag_part()));
            break;
    }
    return v;
}

}  // namespace

BoundednessReport is_sharply_bounded(const InternalSetRep& S, const GridSpec& grid,
                                     const OracleParams& params) {
    BoundednessReport rep;
    if (S.has_net_radius()) {
        // No expansion to read a valuation from; bound the radius net instead.
        auto cls = classify(sample([&S](double eps) { return Complex{S.net_radius(eps), 0.0}; },
                                   grid, S.label),
                            params);
        if (cls.kind == Classification::Kind::Neither) {
            rep.bounded = false;
            rep.detail = "radius net grows beyond every power: " + cls.detail;
            return rep;
        }
        Rational vc = std::min(val_bound(S.a.real_part()), val_bound(S.a.imag_part()));
        int center_m = static_cast<int>(std::max<std::int64_t>(0, ceil_rational(-vc)));
        rep.bounded = true;
        rep.m = std::max(cls.kind == Classification::Kind::Moderate ? cls.n : 0, center_m);
        return rep;
    }
    rep.bounded = true;
    rep.m = static_cast<int>(std::max<std::int64_t>(0, ceil_rational(-extent_valuation(S))));
    rep.detail = "extent valuation " + to_string(extent_valuation(S));
    return rep;
}

namespace {

GenComplex make_point(const AsymptoticScalar& x, const AsymptoticScalar& y) {
    return x + Complex{0.0, 1.0} * y;
}

// One margin condition: lhs + rho^m <= rhs, i.e. g := rhs - lhs >= rho^m.
// When m sits past g's horizon the bump drowns in what g already cannot see,
// so a strictly positive leading term certifies the inequality by itself; an
// empty g certifies nothing for any m.
bool margin_holds(const AsymptoticScalar& lhs, const AsymptoticScalar& rhs, int m) {
    auto g = rhs - lhs;
    if (g.empty()) return false;
    if (Rational(m) >= g.cap())
        return compare(g, AsymptoticScalar::zero(g.cap())) == Ordering::Greater;
    return leq(AsymptoticScalar::monomial(1.0, Rational(m), g.cap()), g);
}

bool margin_ok(const std::vector<std::pair<AsymptoticScalar, AsymptoticScalar>>& conds, int m) {
    for (const auto& [lhs, rhs] : conds)
        if (!margin_holds(lhs, rhs, m)) return false;
    return true;
}

}  // namespace

std::optional<int> neighborhood_margin(const InternalSetRep& inner, const InternalSetRep& outer) {
    if (inner.has_net_radius() || outer.has_net_radius())
        throw ShapePairUnsupportedError("margin needs rho-power shape parameters");
    // A curve has no interior, so it cannot contain any rho^m-neighborhood.
    if (outer.kind == ShapeKind::Circle || outer.kind == ShapeKind::Segment) return std::nullopt;

    auto d = dist(inner.a, outer.a);
    std::vector<std::pair<AsymptoticScalar, AsymptoticScalar>> conds;

    auto inner_outer_radius = [&]() -> std::optional<AsymptoticScalar> {
        switch (inner.kind) {
            case ShapeKind::Disc:
            case ShapeKind::Circle:
                return inner.r1;
            case ShapeKind::Annulus:
                return inner.r2;
            default:
                return std::nullopt;
        }
    };

    switch (outer.kind) {
        case ShapeKind::Disc: {
            if (auto r = inner_outer_radius()) {
                conds.emplace_back(d + *r, outer.r1);
            } else if (inner.kind == ShapeKind::Segment) {
                conds.emplace_back(dist(inner.a, outer.a), outer.r1);
                conds.emplace_back(dist(inner.b, outer.a), outer.r1);
            } else {  // rectangle corners, convexity covers the rest
                auto x1 = inner.a.real_part(), y1 = inner.a.imag_part();
                auto x2 = inner.b.real_part(), y2 = inner.b.imag_part();
                for (const auto& corner :
                     {make_point(x1, y1), make_point(x2, y1), make_point(x1, y2), make_point(x2, y2)})
                    conds.emplace_back(dist(corner, outer.a), outer.r1);
            }
            break;
        }
        case ShapeKind::Annulus: {
            // Need both bounds; only radially described inners have them.
            AsymptoticScalar lo, hi;
            if (inner.kind == ShapeKind::Circle) {
                lo = inner.r1;
                hi = inner.r1;
            } else if (inner.kind == ShapeKind::Annulus) {
                lo = inner.r1;
                hi = inner.r2;
            } else {
                throw ShapePairUnsupportedError("no closed-form margin for " + to_string(inner.kind) +
                                                " inside an annulus");
            }
            conds.emplace_back(outer.r1 + d, lo);
            conds.emplace_back(hi + d, outer.r2);
            break;
        }
        case ShapeKind::Rectangle: {
            auto X1 = outer.a.real_part(), Y1 = outer.a.imag_part();
            auto X2 = outer.b.real_part(), Y2 = outer.b.imag_part();
            auto box = [&](const AsymptoticScalar& lox, const AsymptoticScalar& hix,
                           const AsymptoticScalar& loy, const AsymptoticScalar& hiy) {
                conds.emplace_back(X1, lox);
                conds.emplace_back(hix, X2);
                conds.emplace_back(Y1, loy);
                conds.emplace_back(hiy, Y2);
            };
            switch (inner.kind) {
                case ShapeKind::Disc:
                case ShapeKind::Circle:
                case ShapeKind::Annulus: {
                    auto r = inner.kind == ShapeKind::Annulus ? inner.r2 : inner.r1;
                    auto cx = inner.a.real_part(), cy = inner.a.imag_part();
                    box(cx - r, cx + r, cy - r, cy + r);
                    break;
                }
                case ShapeKind::Rectangle:
                    box(inner.a.real_part(), inner.b.real_part(), inner.a.imag_part(),
                        inner.b.imag_part());
                    break;
                case ShapeKind::Segment: {
                    for (const auto* e : {&inner.a, &inner.b}) {
                        conds.emplace_back(X1, e->real_part());
                        conds.emplace_back(e->real_part(), X2);
                        conds.emplace_back(Y1, e->imag_part());
                        conds.emplace_back(e->imag_part(), Y2);
                    }
                    break;
                }
            }
            break;
        }
        default:
            throw ShapePairUnsupportedError("no closed-form margin for outer " + to_string(outer.kind));
    }

    for (int m = 1; m <= kMarginSearchMax; ++m)
        if (margin_ok(conds, m)) return m;
    return std::nullopt;
}

namespace {

double halton(std::uint64_t index, unsigned base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

double fract(double x) { return x - std::floor(x); }

}  // namespace

UnitSamples make_unit_samples(const SampleParams& p) {
    // Halton points with a seed-derived torus rotation: deterministic, evenly
    // spread, and different seeds give genuinely different point sets.
    const double phi = 0.6180339887498949;
    const double rot1 = fract(static_cast<double>(p.seed % 100003) * phi);
    const double rot2 = fract(static_cast<double>(p.seed % 99991) * phi * phi);
    UnitSamples u;
    u.square.reserve(p.interior);
    for (int k = 0; k < p.interior; ++k)
        u.square.emplace_back(fract(halton(k + 1, 2) + rot1), fract(halton(k + 1, 3) + rot2));
    u.line.reserve(p.boundary);
    for (int k = 0; k < p.boundary; ++k) u.line.push_back(fract(halton(k + 1, 2) + rot2));
    return u;
}

namespace {

Complex segment_point(const ConcreteShape& s, double t) { return s.a + t * (s.b - s.a); }

double dist_to_segment(Complex p, Complex a, Complex b) {
    Complex d = b - a;
    double L2 = std::norm(d);
    double t = L2 == 0.0 ? 0.0 : std::clamp(((p - a) * std::conj(d)).real() / L2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

}  // namespace

ShapePoints map_samples(const ConcreteShape& s, const UnitSamples& u) {
    ShapePoints out;
    out.interior.reserve(u.square.size());
    out.boundary.reserve(u.line.size());
    switch (s.kind) {
        case ShapeKind::Disc: {
            for (auto [u1, u2] : u.square) {
                double r = s.r1 * std::sqrt(u1);
                out.interior.push_back(s.a + std::polar(r, kTwoPi * u2));
            }
            for (double t : u.line) out.boundary.push_back(s.a + std::polar(s.r1, kTwoPi * t));
            break;
        }
        case ShapeKind::Circle: {
            for (auto [u1, u2] : u.square)
                out.interior.push_back(s.a + std::polar(s.r1, kTwoPi * fract(u1 + u2)));
            for (double t : u.line) out.boundary.push_back(s.a + std::polar(s.r1, kTwoPi * t));
            break;
        }
        case ShapeKind::Annulus: {
            for (auto [u1, u2] : u.square) {
                double r = std::sqrt(s.r1 * s.r1 + u1 * (s.r2 * s.r2 - s.r1 * s.r1));
                out.interior.push_back(s.a + std::polar(r, kTwoPi * u2));
            }
            for (std::size_t k = 0; k < u.line.size(); ++k) {
                double r = (k % 2 == 0) ? s.r1 : s.r2;
                out.boundary.push_back(s.a + std::polar(r, kTwoPi * u.line[k]));
            }
            break;
        }
        case ShapeKind::Rectangle: {
            double w = s.b.real() - s.a.real(), h = s.b.imag() - s.a.imag();
            for (auto [u1, u2] : u.square)
                out.interior.push_back(s.a + Complex{u1 * w, u2 * h});
            double per = 2.0 * (w + h);
            for (double t : u.line) {
                double d = t * per;
                Complex p;
                if (d < w)
                    p = s.a + Complex{d, 0.0};
                else if (d < w + h)
                    p = Complex{s.b.real(), s.a.imag() + (d - w)};
                else if (d < 2.0 * w + h)
                    p = Complex{s.b.real() - (d - w - h), s.b.imag()};
                else
                    p = Complex{s.a.real(), s.b.imag() - (d - 2.0 * w - h)};
                out.boundary.push_back(p);
            }
            break;
        }
        case ShapeKind::Segment: {
            if (s.r1 <= 0.0) {
                for (auto [u1, u2] : u.square) out.interior.push_back(segment_point(s, fract(u1 + u2)));
                for (double t : u.line) out.boundary.push_back(segment_point(s, t));
                break;
            }
            // Capsule of half-width r1: deterministic rejection from the
            // bounding box in the segment frame.
            Complex d = s.b - s.a;
            double L = std::abs(d);
            Complex dir = d / L;
            Complex nrm = dir * Complex{0.0, 1.0};
            std::uint64_t idx = 1;
            while (out.interior.size() < u.square.size() && idx < 64 * u.square.size() + 4096) {
                double ux = halton(idx, 2), uy = halton(idx, 3);
                ++idx;
                Complex p = s.a + (ux * (L + 2.0 * s.r1) - s.r1) * dir +
                            ((2.0 * uy - 1.0) * s.r1) * nrm;
                if (dist_to_segment(p, s.a, s.b) <= s.r1) out.interior.push_back(p);
            }
            // Stadium boundary: two straight sides and two end caps.
            double per = 2.0 * L + kTwoPi * s.r1;
            for (double t : u.line) {
                double dd = t * per;
                Complex p;
                if (dd < L) {
                    p = s.a + dd * dir + s.r1 * nrm;
                } else if (dd < L + 0.5 * kTwoPi * s.r1) {
                    double ang = (dd - L) / s.r1;
                    p = s.b + s.r1 * nrm * std::polar(1.0, -ang);
                } else if (dd < 2.0 * L + 0.5 * kTwoPi * s.r1) {
                    p = s.b - (dd - L - 0.5 * kTwoPi * s.r1) * dir - s.r1 * nrm;
                } else {
                    double ang = (dd - 2.0 * L - 0.5 * kTwoPi * s.r1) / s.r1;
                    p = s.a - s.r1 * nrm * std::polar(1.0, -ang);
                }
                out.boundary.push_back(p);
            }
            break;
        }
    }
    return out;
}

bool sharp_ball_contains(const SharpBall& B, const GenComplex& z) {
    SharpNorm n = (z - B.center).sharp_norm();
    // an upper bound below r certifies strict inclusion as well
    return n.value < B.r;
}

std::vector<GenComplex> sample_member_points(const InternalSetRep& S, int count) {
    if (S.has_net_radius())
        throw UnsupportedOperationError("member points need rho-power shape parameters");
    std::vector<GenComplex> out;
    out.reserve(static_cast<std::size_t>(count));
    const Complex I{0.0, 1.0};
    for (int k = 0; k < count; ++k) {
        double u1 = halton(static_cast<std::uint64_t>(k) + 1, 2);
        double u2 = halton(static_cast<std::uint64_t>(k) + 1, 3);
        switch (S.kind) {
            case ShapeKind::Disc:
                out.push_back(S.a + std::polar(std::sqrt(u1), kTwoPi * u2) * S.r1);
                break;
            case ShapeKind::Circle:
                out.push_back(S.a + std::polar(1.0, kTwoPi * u1) * S.r1);
                break;
            case ShapeKind::Annulus: {
                auto radius = S.r1 + u1 * (S.r2 - S.r1);
                out.push_back(S.a + std::polar(1.0, kTwoPi * u2) * radius);
                break;
            }
            case ShapeKind::Rectangle: {
                auto x = S.a.real_part() + u1 * (S.b.real_part() - S.a.real_part());
                auto y = S.a.imag_part() + u2 * (S.b.imag_part() - S.a.imag_part());
                out.push_back(x + I * y);
                break;
            }
            case ShapeKind::Segment:
                out.push_back(S.a + u1 * (S.b - S.a));
                break;
        }
    }
    return out;
}

std::vector<GenComplex> sample_ball_points(const SharpBall& B, int count) {
    std::vector<GenComplex> out;
    out.reserve(static_cast<std::size_t>(count));
    if (count <= 0) return out;
    out.push_back(B.center);
    // smallest tenth strictly above -ln r, so every offset norm is < r
    auto base = static_cast<std::int64_t>(std::floor(-std::log(B.r) * 10.0)) + 1;
    for (int k = 1; k < count; ++k) {
        Rational a{base + ((k - 1) % 20), 10};
        double theta = kTwoPi * halton(static_cast<std::uint64_t>(k), 2);
        out.push_back(B.center +
                      AsymptoticScalar::monomial(std::polar(1.0, theta), a, B.center.cap()));
    }
    return out;
}

std::string to_string(ShapeKind k) {
    switch (k) {
        case ShapeKind::Disc:
            return "disc";
        case ShapeKind::Circle:
            return "circle";
        case ShapeKind::Annulus:
            return "annulus";
        case ShapeKind::Rectangle:
            return "rectangle";
        default:
            return "segment";
    }
}

std::string to_string(Membership m) {
    switch (m) {
        case Membership::Yes:
            return "yes";
        case Membership::No:
            return "no";
        default:
            return "undecided";
    }
}

}  // namespace rhosharp
