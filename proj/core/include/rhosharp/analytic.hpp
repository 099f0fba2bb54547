#pragma once

#include <array>
#include <string>
#include <vector>

#include "rhosharp/func.hpp"
#include "rhosharp/series.hpp"
#include "rhosharp/sets.hpp"

namespace rhosharp {

// Truncation of a convergent series along a schedule: the per-epsilon
// polynomial net representing the sum on a ball of the given radius. Throws
// RadiusTooSmallError when the series radius cannot cover the ball.
GenFunction polynomial_representative(const PowerSeries& s, double ball_radius,
                                      Schedule sch = Schedule::log_default());

struct UnicityReport {
    enum class Verdict { IdenticallyZero, FailsAtOrder, HypothesisFails };

    Verdict verdict = Verdict::HypothesisFails;
    int order = -1;         // FailsAtOrder: first Taylor coefficient that survives
    int depth_checked = 0;  // coefficients confirmed negligible before stopping
    std::string detail;
};

// Zero cascade: with zeros accumulating outward (strictly decreasing
// valuations, all inside the ball, none at the center), a holomorphic u must
// have every Taylor coefficient at the center negligible. The cascade checks
// coefficients by repeated deflation up to kUnicityDepthMax.
UnicityReport unicity_check(const GenFunction& u, const SharpBall& ball,
                            const std::vector<GenComplex>& zeros, const Config& cfg = {});

struct CharacterizationReport {
    enum class Status { Holds, Fails, NotApplicable };

    // 0: no conjugate direction; 1: derivative growth fits the radius;
    // 2: power-series representation; 3: truncation net matches the values
    std::array<Status, 4> status{};
    std::array<std::string, 4> note{};

    bool agree(int i, int j) const {
        if (status[i] == Status::NotApplicable || status[j] == Status::NotApplicable) return true;
        return status[i] == status[j];
    }
    bool all_equivalent() const;
    bool holds(int i) const { return status[i] == Status::Holds; }
};

CharacterizationReport characterization_suite(const GenFunction& u, const SharpBall& ball,
                                              const Config& cfg = {});

struct GrowthClaim {
    enum class Kind { Bounded, PolyGrowth };

    Kind kind = Kind::Bounded;
    int degree = 0;

    static GrowthClaim bounded() { return {Kind::Bounded, 0}; }
    static GrowthClaim poly_growth(int m) { return {Kind::PolyGrowth, m}; }
};

struct GrowthReport {
    bool claim_holds = false;
    int witness_exponent = -1;  // rho^-n circle where the claim broke
    bool conclusion_holds = false;  // D^(degree+1) u at the center is negligible
    std::string detail;
};

// Cauchy-estimate sweep over circles of radius rho^-n, n = 1..8. A bounded
// entire function must be a generalized constant; growth like a degree-m
// polynomial kills D^(m+1). Throws NotEntireError when no infinite radius can
// be certified for u. A violated claim is reported, not thrown.
GrowthReport entire_growth_analysis(const GenFunction& u, GrowthClaim claim,
                                    const Config& cfg = {});

std::string to_string(UnicityReport::Verdict v);

}  // namespace rhosharp
