#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rhosharp/config.hpp"
#include "rhosharp/nets.hpp"
#include "rhosharp/scalar.hpp"

namespace rhosharp {

enum class ShapeKind { Disc, Circle, Annulus, Rectangle, Segment };

// One shape from the parametric catalogue, with generalized parameters. The
// represented set is the net of concrete shapes obtained per epsilon.
//
// Catalogue semantics:
//   Disc       closed disc around `a` of radius r1
//   Circle     the circle |z - a| = r1, oriented (+1 counterclockwise)
//   Annulus    closed ring r1 <= |z - a| <= r2
//   Rectangle  axis-aligned, corners a (lower-left) and b (upper-right)
//   Segment    straight segment from a to b
class InternalSetRep {
public:
    static InternalSetRep disc(GenComplex center, AsymptoticScalar radius);
    static InternalSetRep circle(GenComplex center, AsymptoticScalar radius, int orientation = 1);
    static InternalSetRep annulus(GenComplex center, AsymptoticScalar inner, AsymptoticScalar outer);
    static InternalSetRep rectangle(GenComplex lower_left, GenComplex upper_right);
    static InternalSetRep segment(GenComplex from, GenComplex to);
    // Disc whose radius is a raw net with no rho-power expansion; only the
    // sampling-based operations accept it.
    static InternalSetRep disc_net_radius(GenComplex center, std::function<double(double)> radius,
                                          std::string label);

    ShapeKind kind = ShapeKind::Disc;
    GenComplex a;            // center, lower-left corner, or first endpoint
    GenComplex b;            // second corner or endpoint
    AsymptoticScalar r1, r2; // radii (annulus: inner, outer)
    int orientation = 1;
    std::function<double(double)> net_radius;  // set only by disc_net_radius
    std::string label;

    bool has_net_radius() const { return static_cast<bool>(net_radius); }
};

struct ConcreteShape {
    ShapeKind kind = ShapeKind::Disc;
    Complex a{}, b{};
    double r1 = 0.0, r2 = 0.0;
    int orientation = 1;
    bool degenerate = false;  // radius collapsed or bounds crossed at this eps
};

ConcreteShape concretize(const InternalSetRep& S, double eps);

// Enlarge by delta in every direction (a circle thickens into a ring, a
// segment into a capsule handled by the samplers).
ConcreteShape grow(const ConcreteShape& s, double delta);

enum class Membership { Yes, No, Undecided };

// Symbolic membership; closed shapes keep their boundary, so an "equal up to
// the horizon" comparison lands on Yes. Undecided only appears when the
// deciding difference is not comparable.
Membership contains(const InternalSetRep& S, const GenComplex& z);

struct BoundednessReport {
    bool bounded = false;
    int m = 0;  // certified sup |z| <= eps^-m over the tail window
    std::string detail;
};

BoundednessReport is_sharply_bounded(const InternalSetRep& S, const GridSpec& grid = {},
                                     const OracleParams& params = {});

// Smallest m <= 64 such that the closed rho^m-neighborhood of `inner` still
// sits inside `outer`, certified through leading-term inequalities. Returns
// nullopt when no m <= 64 works; throws ShapePairUnsupportedError for pairs
// without a closed-form margin condition.
std::optional<int> neighborhood_margin(const InternalSetRep& inner, const InternalSetRep& outer);

// Deterministic low-discrepancy unit samples, reusable across epsilon so the
// sampled generalized points vary continuously along the net.
struct UnitSamples {
    std::vector<std::pair<double, double>> square;  // interior parameters
    std::vector<double> line;                       // boundary parameters
};

UnitSamples make_unit_samples(const SampleParams& p);

struct ShapePoints {
    std::vector<Complex> interior;
    std::vector<Complex> boundary;

    std::vector<Complex> all() const {
        std::vector<Complex> out = interior;
        out.insert(out.end(), boundary.begin(), boundary.end());
        return out;
    }
};

// Map unit samples onto a concrete shape. For curves (circle, segment) every
// sample lies on the curve itself.
ShapePoints map_samples(const ConcreteShape& s, const UnitSamples& u);

// Ball for the sharp norm: {z : ||z - center|| < r} with r an ordinary
// positive real. The natural domain for analyticity and unicity statements.
struct SharpBall {
    GenComplex center;
    double r = 1.0;
};

// Conservative: true only when the norm bound certifies strict inclusion.
bool sharp_ball_contains(const SharpBall& B, const GenComplex& z);

// Deterministic generalized member points, built symbolically so membership
// is exact by construction. Throws UnsupportedOperationError for raw-net
// radii.
std::vector<GenComplex> sample_member_points(const InternalSetRep& S, int count);

// Center plus offsets rho^a * e^(i theta) with e^(-a) < r; the exponent
// ladder starts just inside the ball and steps by tenths.
std::vector<GenComplex> sample_ball_points(const SharpBall& B, int count);

std::string to_string(ShapeKind k);
std::string to_string(Membership m);

}  // namespace rhosharp
