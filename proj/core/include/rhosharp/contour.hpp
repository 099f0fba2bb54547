#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "rhosharp/func.hpp"

namespace rhosharp {

// Circle |z - center| = radius, one turn on [0,1]; +1 is counterclockwise.
struct CirclePath {
    GenComplex center;
    AsymptoticScalar radius;  // real with a positive leading coefficient
    int orientation = 1;
};

// Straight segments between generalized vertices. `closed` appends the edge
// back to the first vertex, so a closed square needs four vertices, not five.
struct PolylinePath {
    std::vector<GenComplex> vertices;
    bool closed = false;
};

// Per-epsilon parametrization on [0,1]. The derivative callable may be left
// empty; quadrature then falls back to a central difference in t.
struct SampledPath {
    std::function<Complex(double, double)> gamma;   // (eps, t)
    std::function<Complex(double, double)> dgamma;  // (eps, t)
    bool is_closed = false;
    std::string label;
};

class GenPath {
public:
    using Rep = std::variant<CirclePath, PolylinePath, SampledPath>;

    Rep rep;
    std::string label;

    static GenPath circle(GenComplex center, AsymptoticScalar radius, int orientation = 1);
    static GenPath polyline(std::vector<GenComplex> vertices, bool closed = false);
    static GenPath sampled(std::function<Complex(double, double)> gamma,
                           std::function<Complex(double, double)> dgamma, bool closed,
                           std::string label);

    bool is_circle() const { return std::holds_alternative<CirclePath>(rep); }
    bool is_polyline() const { return std::holds_alternative<PolylinePath>(rep); }
    bool is_sampled() const { return std::holds_alternative<SampledPath>(rep); }
    const CirclePath& as_circle() const { return std::get<CirclePath>(rep); }
    const PolylinePath& as_polyline() const { return std::get<PolylinePath>(rep); }
    const SampledPath& as_sampled() const { return std::get<SampledPath>(rep); }

    bool closed() const;
    GenPath reversed() const;

    // gamma_eps(t) and its t-derivative at one epsilon; t is clamped to [0,1].
    Complex eval_net(double eps, double t) const;
    Complex derivative_net(double eps, double t) const;
};

// Point on the path at a generalized parameter: symbolic substitution for the
// parametric variants, a sampled net otherwise. t must be real with
// 0 <= t <= 1 up to the cap.
GenValue path_eval(const GenPath& g, const GenComplex& t, const Config& cfg = {});

enum class IntegrationMode { Exact, Quadrature };

// Integral of u along g. Exact mode: closed forms for fixed polynomials in z
// and conj(z) over circles and polylines, with generalized parameters.
// Quadrature mode: per-epsilon periodic trapezoid on circles, per-segment
// Gauss rule on polylines, composite trapezoid on sampled paths; the node
// count is doubled once and the disagreement has to stay below a fixed
// fraction of the integrand mass, else QuadratureUnstableError.
GenValue path_integral(const GenFunction& u, const GenPath& g, IntegrationMode mode,
                       const Config& cfg = {});

// (k!/2 pi i) times the integral of u(zeta) (zeta - z)^{-(k+1)} over the
// positively oriented circle |zeta - a| = r. The point must sit well inside:
// compare(r^2, |z - a|^2) == Greater, else PointNotWellInsideError.
GenValue cauchy_integral(const GenFunction& u, const GenComplex& a, const AsymptoticScalar& r,
                         const GenComplex& z, int k, IntegrationMode mode,
                         const Config& cfg = {});

// Straight-line homotopy H(t,s) = (1-s) from(t) + s to(t) between closed paths.
struct ConvexHomotopy {
    GenPath from;
    GenPath to;

    Complex eval_net(double eps, double t, double s) const;
};

struct HomotopyReport {
    bool holomorphic = false;  // integrand passed the conjugate-direction test
    bool equal = false;        // the two integrals differ negligibly
    GenValue from_integral;
    GenValue to_integral;
    std::string detail;
};

// Executable Cauchy theorem: sweep the homotopy grid (t = i/16, s = j/8) for
// membership in u's domain, test holomorphy there, then compare the two
// contour integrals. Throws HomotopyLeavesDomainError when a grid point
// falls outside the domain (or its membership cannot be decided).
HomotopyReport homotopy_invariance_check(const GenFunction& u, const ConvexHomotopy& H,
                                         const Config& cfg = {});

struct EstimateReport {
    bool holds = false;
    double worst_ratio = 0.0;  // max over the tail window of LHS / RHS
    double witness_eps = 0.0;  // first epsilon violating the bound; 0 when none
    std::string detail;
};

// Derivative bound |D^k u(z)| <= k! r^{-k} max_{|zeta-a|=r} |u(zeta)|, checked
// at every tail grid point with slack kIneqSlack; the circle max is sampled at
// quad_nodes points per epsilon. lhs_scale multiplies the left side so the
// checker itself can be put on trial with a corrupted claim.
EstimateReport cauchy_estimate_check(const GenFunction& u, const GenComplex& a,
                                     const AsymptoticScalar& r, const GenComplex& z, int k,
                                     const Config& cfg = {}, double lhs_scale = 1.0);

std::string to_string(const GenPath& g);

}  // namespace rhosharp
