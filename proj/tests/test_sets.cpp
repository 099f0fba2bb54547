#include <cmath>

#include "doctest.h"
#include "rhosharp/errors.hpp"
#include "rhosharp/sets.hpp"

using namespace rhosharp;

namespace {

AsymptoticScalar num(double v) { return AsymptoticScalar::constant(v); }
AsymptoticScalar rho_pow(long n) { return AsymptoticScalar::monomial(1.0, Rational(n)); }

}  // namespace

TEST_CASE("shape constructors validate their parameters") {
    CHECK_THROWS_AS(InternalSetRep::disc(num(0), num(-1.0)), DegenerateShapeError);
    CHECK_THROWS_AS(InternalSetRep::disc(num(0), AsymptoticScalar::monomial(Complex{0, 1}, Rational(0))),
                    DegenerateShapeError);
    CHECK_THROWS_AS(InternalSetRep::disc(num(0), AsymptoticScalar::zero()), DegenerateShapeError);
    CHECK_THROWS_AS(InternalSetRep::annulus(num(0), num(2.0), num(1.0)), DegenerateShapeError);
    CHECK_THROWS_AS(InternalSetRep::segment(num(1), num(1)), DegenerateShapeError);
    CHECK_THROWS_AS(InternalSetRep::rectangle(num(0), AsymptoticScalar::monomial(Complex{0, 1}, Rational(0))),
                    DegenerateShapeError);
    // rho-sized radii are small but strictly positive.
    CHECK_NOTHROW(InternalSetRep::disc(num(0), AsymptoticScalar::rho()));
}

TEST_CASE("disc membership distinguishes rho-level crossings of the boundary") {
    auto D = InternalSetRep::disc(num(0), num(1.0));
    CHECK(contains(D, num(1.0) - AsymptoticScalar::rho()) == Membership::Yes);
    CHECK(contains(D, num(1.0) + AsymptoticScalar::rho()) == Membership::No);
    CHECK(contains(D, num(1.0)) == Membership::Yes);  // closed disc keeps its boundary
    CHECK(contains(D, AsymptoticScalar::monomial(Complex{0, 1}, Rational(0))) == Membership::Yes);
    CHECK(contains(D, num(2.0)) == Membership::No);
}

TEST_CASE("circle membership is boundary-only") {
    auto C = InternalSetRep::circle(num(0), num(1.0));
    CHECK(contains(C, num(1.0)) == Membership::Yes);
    CHECK(contains(C, AsymptoticScalar::monomial(Complex{0, -1}, Rational(0))) == Membership::Yes);
    CHECK(contains(C, num(1.0) - AsymptoticScalar::rho()) == Membership::No);
    CHECK(contains(C, num(0.5)) == Membership::No);
}

TEST_CASE("annulus membership") {
    auto A = InternalSetRep::annulus(num(0), num(0.5), num(2.0));
    CHECK(contains(A, num(1.0)) == Membership::Yes);
    CHECK(contains(A, num(0.5)) == Membership::Yes);
    CHECK(contains(A, num(0.5) - AsymptoticScalar::rho()) == Membership::No);
    CHECK(contains(A, num(2.0) + AsymptoticScalar::rho()) == Membership::No);
    CHECK(contains(A, AsymptoticScalar::rho()) == Membership::No);  // the hole
}

TEST_CASE("rectangle membership with generalized corners") {
    auto R = InternalSetRep::rectangle(num(0), AsymptoticScalar::constant(Complex{2.0, 1.0}));
    CHECK(contains(R, AsymptoticScalar::constant(Complex{1.0, 0.5})) == Membership::Yes);
    CHECK(contains(R, AsymptoticScalar::constant(Complex{1.0, 0.5}) + AsymptoticScalar::rho()) ==
          Membership::Yes);
    CHECK(contains(R, AsymptoticScalar::constant(Complex{2.0, 0.5}) + AsymptoticScalar::rho()) ==
          Membership::No);
    CHECK(contains(R, AsymptoticScalar::constant(Complex{2.0, 1.0})) == Membership::Yes);  // corner
    CHECK(contains(R, AsymptoticScalar::monomial(Complex{0.0, -1.0}, Rational(3))) == Membership::No);
}

TEST_CASE("segment membership tracks the parameter line") {
    auto S = InternalSetRep::segment(num(0), AsymptoticScalar::constant(Complex{1.0, 1.0}));
    CHECK(contains(S, AsymptoticScalar::constant(Complex{0.5, 0.5})) == Membership::Yes);
    CHECK(contains(S, num(0)) == Membership::Yes);
    // A rho-sized step past the far endpoint leaves the segment.
    auto past = AsymptoticScalar::constant(Complex{1.0, 1.0}) +
                AsymptoticScalar::monomial(Complex{1.0, 1.0}, Rational(1));
    CHECK(contains(S, past) == Membership::No);
    // A rho-sized offset off the line is off the segment.
    auto off = AsymptoticScalar::constant(Complex{0.5, 0.5}) +
               AsymptoticScalar::monomial(Complex{-1.0, 1.0}, Rational(1));
    CHECK(contains(S, off) == Membership::No);
}

TEST_CASE("sharp boundedness reads the extent valuation") {
    auto wide = InternalSetRep::disc(num(0), AsymptoticScalar::monomial(1.0, Rational(-2)));
    auto rep = is_sharply_bounded(wide);
    CHECK(rep.bounded);
    CHECK(rep.m == 2);

    auto shifted = InternalSetRep::disc(AsymptoticScalar::monomial(1.0, Rational(-1)), num(1.0));
    rep = is_sharply_bounded(shifted);
    CHECK(rep.bounded);
    CHECK(rep.m == 1);

    auto tame = InternalSetRep::rectangle(num(0), AsymptoticScalar::constant(Complex{1.0, 2.0}));
    rep = is_sharply_bounded(tame);
    CHECK(rep.bounded);
    CHECK(rep.m == 0);
}

TEST_CASE("a net radius beyond every power is not sharply bounded") {
    auto bad = InternalSetRep::disc_net_radius(
        num(0), [](double eps) { return std::exp(1.0 / eps); }, "exp(1/eps)");
    auto rep = is_sharply_bounded(bad);
    CHECK(!rep.bounded);

    // the pointwise certificate absorbs the constant: 3/eps <= eps^-2 on the tail
    auto ok = InternalSetRep::disc_net_radius(
        num(0), [](double eps) { return 3.0 / eps; }, "3/eps");
    rep = is_sharply_bounded(ok);
    CHECK(rep.bounded);
    CHECK(rep.m == 2);

    auto snug = InternalSetRep::disc_net_radius(
        num(0), [](double eps) { return 0.5 / eps; }, "0.5/eps");
    rep = is_sharply_bounded(snug);
    CHECK(rep.bounded);
    CHECK(rep.m == 1);
}

TEST_CASE("neighborhood margins on disc pairs") {
    auto unit = InternalSetRep::disc(num(0), num(1.0));
    auto twice = InternalSetRep::disc(num(0), num(2.0));
    auto m = neighborhood_margin(unit, twice);
    REQUIRE(m.has_value());
    CHECK(*m == 1);

    CHECK(!neighborhood_margin(unit, unit).has_value());

    auto small = InternalSetRep::disc(num(0), rho_pow(3));
    auto medium = InternalSetRep::disc(num(0), rho_pow(2));
    m = neighborhood_margin(small, medium);
    REQUIRE(m.has_value());
    CHECK(*m == 3);
}

TEST_CASE("neighborhood margins across catalogue kinds") {
    auto circ = InternalSetRep::circle(num(0), num(1.0));
    auto ring = InternalSetRep::annulus(num(0), num(0.5), num(2.0));
    auto m = neighborhood_margin(circ, ring);
    REQUIRE(m.has_value());
    CHECK(*m == 1);

    auto seg = InternalSetRep::segment(num(-0.5), num(0.5));
    auto disc = InternalSetRep::disc(num(0), num(1.0));
    m = neighborhood_margin(seg, disc);
    REQUIRE(m.has_value());
    CHECK(*m == 1);

    auto box = InternalSetRep::rectangle(AsymptoticScalar::constant(Complex{-2.0, -2.0}),
                                         AsymptoticScalar::constant(Complex{2.0, 2.0}));
    m = neighborhood_margin(disc, box);
    REQUIRE(m.has_value());
    CHECK(*m == 1);

    // A curve cannot contain a two-dimensional neighborhood.
    CHECK(!neighborhood_margin(seg, circ).has_value());

    // No closed form for a disc inside an annulus.
    CHECK_THROWS_AS(neighborhood_margin(disc, ring), ShapePairUnsupportedError);
}

TEST_CASE("margins at and beyond the knowledge horizon") {
    auto inner = InternalSetRep::disc(num(0), num(1.0));
    // Clearance exactly rho^3: the touching closed ball still fits.
    auto snug = InternalSetRep::disc(num(0), num(1.0) + rho_pow(3));
    auto m = neighborhood_margin(inner, snug);
    REQUIRE(m.has_value());
    CHECK(*m == 3);

    // Inner radius known only to cap 2: 1 + O(rho^2) + rho^m <= 2 is still
    // certified by the unit of clearance, for the smallest m probed.
    auto coarse = InternalSetRep::disc(num(0), AsymptoticScalar::constant(1.0, Rational(2)));
    auto outer = InternalSetRep::disc(num(0), num(2.0));
    m = neighborhood_margin(coarse, outer);
    REQUIRE(m.has_value());
    CHECK(*m == 1);
}

TEST_CASE("concretize and degeneracy flags") {
    auto D = InternalSetRep::disc(AsymptoticScalar::rho(), num(1.0) - AsymptoticScalar::rho());
    auto c = concretize(D, 0.25);
    CHECK(c.a == Complex{0.25, 0.0});
    CHECK(c.r1 == doctest::Approx(0.75));
    CHECK(!c.degenerate);

    auto bad = InternalSetRep::disc_net_radius(
        num(0), [](double eps) { return eps - 0.001; }, "shrinking");
    CHECK(concretize(bad, 0.0001).degenerate);
    CHECK(!concretize(bad, 0.25).degenerate);
}

TEST_CASE("growing a shape keeps its kind except where it cannot") {
    ConcreteShape circle{ShapeKind::Circle, Complex{}, Complex{}, 1.0, 0.0, 1, false};
    auto ring = grow(circle, 0.25);
    CHECK(ring.kind == ShapeKind::Annulus);
    CHECK(ring.r1 == doctest::Approx(0.75));
    CHECK(ring.r2 == doctest::Approx(1.25));

    auto disc = grow(circle, 2.0);  // over-grown circle closes into a disc
    CHECK(disc.kind == ShapeKind::Disc);
    CHECK(disc.r1 == doctest::Approx(3.0));
}

TEST_CASE("samples land inside their shapes and are deterministic") {
    SampleParams p;
    p.interior = 128;
    p.boundary = 64;
    auto u = make_unit_samples(p);
    auto u2 = make_unit_samples(p);
    CHECK(u.square == u2.square);

    ConcreteShape disc{ShapeKind::Disc, Complex{1.0, -2.0}, Complex{}, 1.5, 0.0, 1, false};
    auto pts = map_samples(disc, u);
    REQUIRE(pts.interior.size() == 128);
    REQUIRE(pts.boundary.size() == 64);
    for (auto z : pts.interior) CHECK(std::abs(z - disc.a) <= disc.r1 + 1e-12);
    for (auto z : pts.boundary) CHECK(std::abs(z - disc.a) == doctest::Approx(disc.r1));

    ConcreteShape rect{ShapeKind::Rectangle, Complex{0.0, 0.0}, Complex{2.0, 1.0}, 0, 0, 1, false};
    for (auto z : map_samples(rect, u).interior) {
        CHECK(z.real() >= -1e-12);
        CHECK(z.real() <= 2.0 + 1e-12);
        CHECK(z.imag() >= -1e-12);
        CHECK(z.imag() <= 1.0 + 1e-12);
    }

    ConcreteShape seg{ShapeKind::Segment, Complex{0.0, 0.0}, Complex{1.0, 1.0}, 0, 0, 1, false};
    auto capsule = grow(seg, 0.1);
    auto cpts = map_samples(capsule, u);
    REQUIRE(cpts.interior.size() == 128);
    auto seg_dist = [&](Complex z) {
        Complex d = seg.b - seg.a;
        double t = std::clamp(((z - seg.a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
        return std::abs(z - (seg.a + t * d));
    };
    for (auto z : cpts.interior) CHECK(seg_dist(z) <= 0.1 + 1e-12);
    for (auto z : cpts.boundary) CHECK(seg_dist(z) == doctest::Approx(0.1));
}
