#include "rhosharp/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <utility>

#include "rhosharp/config.hpp"
#include "rhosharp/errors.hpp"
#include "rhosharp/nets.hpp"

namespace rhosharp {

GenFunction polynomial_representative(const PowerSeries& s, double ball_radius, Schedule sch) {
    RadiusReport rad = convergence_radius(s);
    if (!(rad.R >= ball_radius * (1.0 - 1e-12))) {
        std::ostringstream os;
        os << "series radius " << rad.R << " does not cover a ball of radius " << ball_radius;
        if (rad.method == RadiusReport::Method::EstimatedFromStored)
            os << " (radius estimated from stored coefficients)";
        throw RadiusTooSmallError(os.str());
    }
    return GenFunction::truncated(s, std::move(sch));
}

namespace {

std::string describe(const GenValue& w) {
    if (w.sampled()) return w.cls ? to_string(*w.cls) : "sampled, unclassified";
    return to_string(w.value);
}

// Exact synthetic division of a pure-z polynomial by (z - c). The remainder
// u(c) is discarded; callers have already certified it negligible.
GenFunction deflate_poly(const FixedPoly& p, const GenComplex& c) {
    int d = 0;
    for (const auto& [pq, coeff] : p.coeffs) {
        if (coeff.empty()) continue;
        if (pq.second > 0)
            throw UnsupportedOperationError("deflation needs a pure-z polynomial");
        d = std::max(d, pq.first);
    }
    if (d == 0) return GenFunction::constant(AsymptoticScalar::zero(c.cap()));
    std::vector<GenComplex> a(static_cast<std::size_t>(d) + 1, AsymptoticScalar::zero(c.cap()));
    for (const auto& [pq, coeff] : p.coeffs)
        if (pq.second == 0 && !coeff.empty()) a[static_cast<std::size_t>(pq.first)] = coeff;
    std::vector<GenComplex> q(static_cast<std::size_t>(d), AsymptoticScalar::zero(c.cap()));
    q[static_cast<std::size_t>(d) - 1] = a[static_cast<std::size_t>(d)];
    for (int k = d - 1; k >= 1; --k)
        q[static_cast<std::size_t>(k) - 1] = a[static_cast<std::size_t>(k)] + c * q[static_cast<std::size_t>(k)];
    std::map<std::pair<int, int>, GenComplex> out;
    for (int k = 0; k < d; ++k)
        if (!q[static_cast<std::size_t>(k)].empty()) out[{k, 0}] = q[static_cast<std::size_t>(k)];
    return GenFunction::poly(std::move(out), "deflated");
}

// The coefficient generator is already in powers of (z - center), so dividing
// by that offset is a plain shift of the vector.
GenFunction deflate_sampled_poly(const SampledCallable& sc) {
    SampledCallable out;
    out.center = sc.center;
    out.label = sc.label + "/offset";
    out.poly = [gen = sc.poly](double eps) {
        std::vector<Complex> a = gen(eps);
        if (a.size() <= 1) return std::vector<Complex>{};
        return std::vector<Complex>(a.begin() + 1, a.end());
    };
    out.f = [gen = out.poly, c = sc.center](double eps, Complex z) {
        std::vector<Complex> a = gen(eps);
        Complex dz = z - c.eval_complex(eps);
        Complex acc{0.0, 0.0};
        for (std::size_t k = a.size(); k > 0; --k) acc = acc * dz + a[k - 1];
        return acc;
    };
    GenFunction g;
    g.rep = std::move(out);
    g.label = sc.label + "/offset";
    return g;
}

// Bare callable: difference quotient, with a one-sided step where z sits too
// close to the center for the quotient to mean anything.
GenFunction deflate_sampled_bare(const SampledCallable& sc, const GenComplex& c) {
    SampledCallable out;
    out.center = c;
    out.label = sc.label + "/offset";
    out.f = [f = sc.f, c](double eps, Complex z) {
        Complex ce = c.eval_complex(eps);
        double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + std::abs(ce));
        Complex dz = z - ce;
        if (std::abs(dz) <= h) return (f(eps, ce + Complex{h, 0.0}) - f(eps, ce)) / h;
        return (f(eps, z) - f(eps, ce)) / dz;
    };
    GenFunction g;
    g.rep = std::move(out);
    g.label = sc.label + "/offset";
    return g;
}

GenFunction deflate_at(const GenFunction& u, const SharpBall& ball) {
    if (u.is_poly()) return deflate_poly(u.as_poly(), ball.center);
    if (u.is_series()) {
        const TruncatedSeries& ts = u.as_series();
        if (!equal_up_to_cap(ts.series.center, ball.center))
            throw UnsupportedOperationError("cascade center differs from the series expansion point");
        return GenFunction::truncated(deflate(ts.series), ts.schedule);
    }
    const SampledCallable& sc = u.as_sampled();
    if (sc.has_poly()) {
        if (!equal_up_to_cap(sc.center, ball.center))
            throw UnsupportedOperationError("cascade center differs from the sampled expansion point");
        return deflate_sampled_poly(sc);
    }
    return deflate_sampled_bare(sc, ball.center);
}

}  // namespace

UnicityReport unicity_check(const GenFunction& u, const SharpBall& ball,
                            const std::vector<GenComplex>& zeros, const Config& cfg) {
    UnicityReport rep;
    rep.verdict = UnicityReport::Verdict::HypothesisFails;

    HolomorphyReport holo = dbar_test(u, ball, cfg);
    if (!holo.holomorphic) {
        rep.detail = "u is not holomorphic on the ball: " + holo.detail;
        return rep;
    }
    if (zeros.empty()) {
        rep.detail = "no zeros supplied";
        return rep;
    }

    // Outward accumulation: every zero strictly inside the ball, none at the
    // center, sharp norms strictly increasing (valuations strictly falling).
    // Inward accumulation proves nothing here: a net can vanish at every
    // point of positive valuation without being zero on the ball.
    std::optional<Rational> prev;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        GenComplex off = zeros[i] - ball.center;
        if (!is_invertible(off)) {
            rep.detail = "zero " + std::to_string(i) + " coincides with the center up to the cap";
            return rep;
        }
        if (!sharp_ball_contains(ball, zeros[i])) {
            rep.detail = "zero " + std::to_string(i) + " is not certified inside the ball";
            return rep;
        }
        Rational v = off.valuation().bound();  // exact: the offset is invertible
        if (prev && !(v < *prev)) {
            rep.detail = "sharp norms stall between zeros " + std::to_string(i - 1) + " and " +
                         std::to_string(i) + ": zeros must accumulate outward";
            return rep;
        }
        prev = v;
    }

    // Shallow zeros of a fast net decay like eps^(m_eps/k): superpolynomial,
    // but with a slope the default grid depth cannot push past the threshold.
    // Deepening the grid lets those values underflow to exact zeros, which
    // the oracle counts. Symbolic paths never notice the difference.
    Config deep = cfg;
    deep.grid.j_max = std::max(deep.grid.j_max, 160);

    GenFunction cur = u;
    for (int depth = 0; depth < kUnicityDepthMax; ++depth) {
        for (std::size_t i = 0; i < zeros.size(); ++i) {
            GenValue w;
            try {
                w = eval(cur, zeros[i], deep);
            } catch (const Error& e) {
                rep.detail = "evaluation failed at depth " + std::to_string(depth) + ": " + e.what();
                return rep;
            }
            if (!value_negligible(w)) {
                rep.detail = depth == 0
                                 ? "point " + std::to_string(i) + " is not a zero of u: " + describe(w)
                                 : "zero " + std::to_string(i) + " stops vanishing at depth " +
                                       std::to_string(depth);
                return rep;
            }
        }
        GenValue at_center;
        try {
            at_center = eval(cur, ball.center, deep);
        } catch (const Error& e) {
            rep.detail = "evaluation failed at depth " + std::to_string(depth) + ": " + e.what();
            return rep;
        }
        if (!value_negligible(at_center)) {
            rep.verdict = UnicityReport::Verdict::FailsAtOrder;
            rep.order = depth;
            rep.depth_checked = depth;
            rep.detail = "Taylor coefficient of order " + std::to_string(depth) +
                         " survives: " + describe(at_center);
            return rep;
        }
        rep.depth_checked = depth + 1;
        if (depth + 1 == kUnicityDepthMax) break;
        try {
            cur = deflate_at(cur, ball);
        } catch (const Error& e) {
            rep.detail = "deflation failed at depth " + std::to_string(depth) + ": " + e.what();
            return rep;
        }
    }

    rep.verdict = UnicityReport::Verdict::IdenticallyZero;
    rep.order = -1;
    std::ostringstream os;
    os << "Taylor coefficients through order " << kUnicityDepthMax - 1
       << " all negligible: u == 0 on the sharp ball";
    rep.detail = os.str();
    return rep;
}

bool CharacterizationReport::all_equivalent() const {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (!agree(i, j)) return false;
    return true;
}

namespace {

using Status = CharacterizationReport::Status;

// Sampled valuation with a tri-state escape for unclassifiable nets.
double valuation_of(const GenValue& w, bool& neither) {
    constexpr double kDeep = 1e9;
    if (!w.sampled()) {
        if (w.value.empty()) return kDeep;
        return to_double(w.value.valuation().bound());
    }
    if (!w.cls || w.cls->kind == Classification::Kind::Neither) {
        neither = true;
        return 0.0;
    }
    if (w.cls->is_negligible()) return kDeep;
    return w.cls->has_estimate ? w.cls->estimate : -static_cast<double>(w.cls->n);
}

// Condition 1 for a per-epsilon polynomial net: D^n u(center)/n! is the n-th
// coefficient, available exactly, so the Cauchy growth test runs on the
// coefficient nets themselves. ||a_n|| r^n bounded means the level
// v(a_n) - n log r never drops below its first reading.
std::pair<Status, std::string> sampled_coefficient_growth(const SampledCallable& sc,
                                                          const SharpBall& ball,
                                                          const Config& cfg) {
    const double log_r = std::log(ball.r);
    double base = 0.0;
    bool have_base = false;
    for (int n = 0; n <= 8; ++n) {
        SampledNet net = sample(
            [&](double eps) {
                std::vector<Complex> a = sc.poly(eps);
                return n < static_cast<int>(a.size()) ? a[static_cast<std::size_t>(n)]
                                                      : Complex{};
            },
            cfg.grid, "a_" + std::to_string(n));
        Classification cls = classify(net, cfg.oracle);
        if (cls.kind == Classification::Kind::Neither)
            return {Status::Fails, "coefficient " + std::to_string(n) + " is not moderate"};
        if (cls.is_negligible()) continue;
        double v = cls.has_estimate ? cls.estimate : -static_cast<double>(cls.n);
        double level = v - n * log_r;
        if (!have_base) {
            base = level;
            have_base = true;
        } else if (level < base - 0.75) {
            return {Status::Fails,
                    "coefficient growth outruns the ball radius at order " + std::to_string(n)};
        }
    }
    return {Status::Holds, "coefficient norms stay within the radius bound through order 8"};
}

// Condition 3: the truncation net against the summed or symbolic values.
// The relative snap must absorb the summation precision floor e^-cap
// (about 4e-11 at the default cap) and double rounding.
constexpr double kMatchSnap = 1e-9;

Status representative_matches(const SampledNet& rep_net, const SampledNet& val_net,
                              const Config& cfg) {
    Classification cls =
        classify_relative(net_difference(rep_net, val_net), val_net, cfg.oracle, kMatchSnap);
    return cls.is_negligible() ? Status::Holds : Status::Fails;
}

}  // namespace

CharacterizationReport characterization_suite(const GenFunction& u, const SharpBall& ball,
                                              const Config& cfg) {
    CharacterizationReport rep;
    const std::vector<GenComplex> pts = sample_ball_points(ball, 20);
    const GridSpec grid = cfg.grid;

    HolomorphyReport holo = dbar_test(u, ball, cfg);
    rep.status[0] = holo.holomorphic ? Status::Holds : Status::Fails;
    rep.note[0] = holo.detail;

    if (u.is_poly()) {
        const FixedPoly& p = u.as_poly();

        // 1: the conjugate-direction derivative must die on the ball; the
        // z-tail terminates, so the radius bound is then automatic.
        bool conj_clean = true;
        GenFunction dbar_dir = derivative_mixed(u, 0, 1);
        for (const GenComplex& z : pts)
            if (!value_negligible(eval(dbar_dir, z, cfg))) {
                conj_clean = false;
                break;
            }
        rep.status[1] = conj_clean ? Status::Holds : Status::Fails;
        rep.note[1] = conj_clean ? "finite expansion: derivative growth terminates"
                                 : "conjugate-direction derivative survives on the ball";

        // 2: a finite power expansion is its own series.
        rep.status[2] = conj_clean ? Status::Holds : Status::Fails;
        rep.note[2] = conj_clean ? "finite power expansion in z"
                                 : "conjugate powers keep a series form out of reach";

        // 3: compare against the pure-z truncation.
        std::map<std::pair<int, int>, GenComplex> pure;
        for (const auto& [pq, coeff] : p.coeffs)
            if (pq.second == 0 && !coeff.empty()) pure[pq] = coeff;
        GenFunction trunc = GenFunction::poly(std::move(pure), "pure-z part");
        Status match = Status::Holds;
        for (const GenComplex& z : pts) {
            SampledNet nu = sample([&](double eps) { return u.eval_net(eps, z.eval_complex(eps)); },
                                   grid, "u");
            SampledNet nr = sample(
                [&](double eps) { return trunc.eval_net(eps, z.eval_complex(eps)); }, grid, "rep");
            if (representative_matches(nr, nu, cfg) == Status::Fails) {
                match = Status::Fails;
                break;
            }
        }
        rep.status[3] = match;
        rep.note[3] = match == Status::Holds ? "pure-z truncation reproduces the values"
                                             : "pure-z truncation misses the values";
        return rep;
    }

    if (u.is_series()) {
        const TruncatedSeries& ts = u.as_series();
        RadiusReport rad = convergence_radius(ts.series);
        const bool covers = rad.R >= ball.r * (1.0 - 1e-12);
        std::ostringstream os;
        os << "coefficient root-growth limit R = " << rad.R;
        if (rad.method == RadiusReport::Method::EstimatedFromStored) os << " (estimated)";
        os << (covers ? " covers" : " misses") << " ball radius " << ball.r;

        rep.status[1] = covers ? Status::Holds : Status::Fails;
        rep.note[1] = os.str();
        rep.status[2] = covers ? Status::Holds : Status::Fails;
        rep.note[2] = covers ? "declared series converges on the ball"
                             : "declared series stops short of the ball";

        Status match = Status::Holds;
        std::string why = "schedule truncation reproduces the sums";
        for (const GenComplex& z : pts) {
            // Points close to the edge need more stored terms per unit of
            // precision than the prefix carries; a coarser sum still separates
            // match from mismatch, since everything past rho^3 on the tail
            // window sits far below the relative snap.
            GenValue sum;
            bool summed = false;
            std::string sum_err;
            for (Rational prec = cfg.cap; prec >= Rational(3) && !summed; prec /= 2) {
                try {
                    sum = sum_at(ts.series, z, prec);
                    summed = true;
                } catch (const NotConvergedError& e) {
                    sum_err = e.what();
                } catch (const Error& e) {
                    sum_err = e.what();
                    break;
                }
            }
            if (!summed) {
                match = Status::Fails;
                why = "summation failed at a ball point: " + sum_err;
                break;
            }
            SampledNet nu = sample([&](double eps) { return u.eval_net(eps, z.eval_complex(eps)); },
                                   grid, "truncation");
            SampledNet ns = sample(sum.value, grid);
            if (representative_matches(nu, ns, cfg) == Status::Fails) {
                match = Status::Fails;
                why = "schedule truncation drifts from the summed values";
                break;
            }
        }
        rep.status[3] = match;
        rep.note[3] = why;
        return rep;
    }

    const SampledCallable& sc = u.as_sampled();
    if (!sc.has_poly()) {
        for (int i = 1; i <= 3; ++i) {
            rep.status[i] = Status::NotApplicable;
            rep.note[i] = "bare callable: no derivative or coefficient access";
        }
        return rep;
    }

    auto [growth, growth_note] = sampled_coefficient_growth(sc, ball, cfg);
    rep.status[1] = growth;
    rep.note[1] = growth_note;

    rep.status[2] = Status::Holds;
    rep.note[2] = "per-epsilon polynomial in powers of z - center";

    Status match = Status::Holds;
    for (const GenComplex& z : pts) {
        SampledNet nf =
            sample([&](double eps) { return sc.f(eps, z.eval_complex(eps)); }, grid, "f");
        SampledNet nh = sample(
            [&](double eps) {
                std::vector<Complex> a = sc.poly(eps);
                Complex dz = z.eval_complex(eps) - sc.center.eval_complex(eps);
                Complex acc{0.0, 0.0};
                for (std::size_t k = a.size(); k > 0; --k) acc = acc * dz + a[k - 1];
                return acc;
            },
            grid, "coeffs");
        if (representative_matches(nh, nf, cfg) == Status::Fails) {
            match = Status::Fails;
            break;
        }
    }
    rep.status[3] = match;
    rep.note[3] = match == Status::Holds ? "coefficient net reproduces the callable"
                                         : "coefficient net drifts from the callable";
    return rep;
}

GrowthReport entire_growth_analysis(const GenFunction& u, GrowthClaim claim, const Config& cfg) {
    GenComplex center = AsymptoticScalar::zero(cfg.cap);
    if (u.is_poly()) {
        for (const auto& [pq, coeff] : u.as_poly().coeffs)
            if (pq.second > 0 && !coeff.empty())
                throw NotEntireError("conjugate powers present");
    } else if (u.is_series()) {
        RadiusReport rad = convergence_radius(u.as_series().series);
        if (rad.method != RadiusReport::Method::ExactLaw || !std::isinf(rad.R))
            throw NotEntireError("no certified infinite radius for the series");
        center = u.as_series().series.center;
    } else {
        if (!u.as_sampled().has_poly())
            throw NotEntireError("bare callable carries no radius certificate");
        center = u.as_sampled().center;
    }

    GrowthReport rep;
    const int m = claim.kind == GrowthClaim::Kind::PolyGrowth ? claim.degree : 0;

    // Sup profile on circles rho^-n. A degree-m bound means the adjusted
    // level v_n + n*m never drops below its first reading; 0.5 of slack
    // absorbs oracle noise on sampled paths.
    double base = 0.0;
    bool have_base = false;
    std::string why;
    for (int n = 1; n <= 8 && rep.witness_exponent < 0; ++n) {
        double worst = 1e9;
        for (int t = 0; t < 10; ++t) {
            double th = 2.0 * 3.14159265358979323846 * (t + 0.37) / 10.0;
            GenComplex z =
                center + AsymptoticScalar::monomial(std::polar(1.0, th), Rational(-n), cfg.cap);
            bool neither = false;
            double v;
            try {
                v = valuation_of(eval(u, z, cfg), neither);
            } catch (const Error& e) {
                neither = true;
                v = 0.0;
                why = std::string("evaluation broke down: ") + e.what();
            }
            if (neither) {
                rep.witness_exponent = n;
                if (why.empty()) why = "values beyond every rho power";
                break;
            }
            worst = std::min(worst, v);
        }
        if (rep.witness_exponent >= 0) break;
        double adjusted = worst + n * m;
        if (!have_base) {
            base = adjusted;
            have_base = true;
        } else if (adjusted < base - 0.5) {
            rep.witness_exponent = n;
            why = "sup outgrows the claimed profile";
        }
    }
    rep.claim_holds = rep.witness_exponent < 0;

    GenValue kill = eval(derivative(u, m + 1), center, cfg);
    rep.conclusion_holds = value_negligible(kill);

    std::ostringstream os;
    if (claim.kind == GrowthClaim::Kind::Bounded)
        os << "claim: bounded by a generalized constant; ";
    else
        os << "claim: polynomial growth of degree " << claim.degree << "; ";
    if (rep.claim_holds)
        os << "no violation on circles rho^-1 .. rho^-8";
    else
        os << why << " at rho^-" << rep.witness_exponent;
    os << "; D^" << m + 1 << " u at the center "
       << (rep.conclusion_holds ? "is negligible" : "survives: " + describe(kill));
    if (claim.kind == GrowthClaim::Kind::Bounded && rep.claim_holds && rep.conclusion_holds)
        os << "; u is a generalized constant";
    rep.detail = os.str();
    return rep;
}

std::string to_string(UnicityReport::Verdict v) {
    switch (v) {
        case UnicityReport::Verdict::IdenticallyZero: return "identically zero";
        case UnicityReport::Verdict::FailsAtOrder: return "fails at order";
        case UnicityReport::Verdict::HypothesisFails: return "hypothesis fails";
    }
    return "?";
}

}  // namespace rhosharp
