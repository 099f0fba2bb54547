#pragma once

#include <cmath>
#include <cstdint>

#include "rhosharp/rational.hpp"

namespace rhosharp {

// Knowledge horizon used when no cap is given explicitly.
inline const Rational kDefaultCap{24};

// Relative tolerance below which a summed coefficient counts as cancelled.
inline constexpr double kCoeffTol = 1e-12;

// Epsilon grid: eps_j = q^j for j in [j_min, j_max].
struct GridSpec {
    int j_min = 8;
    int j_max = 48;
    double q = 0.5;

    int size() const { return j_max - j_min + 1; }
    double eps(int idx) const { return std::pow(q, j_min + idx); }
    double log_eps(int idx) const { return (j_min + idx) * std::log(q); }
};

// Numeric oracle thresholds.
struct OracleParams {
    int window = 16;       // tail points used for slope fits and bounds
    double v_neg = 20.0;   // estimated valuation at or above this: negligible
    int n_max = 50;        // largest admissible moderateness exponent
};

// Shape sampling.
struct SampleParams {
    int interior = 512;
    int boundary = 512;
    std::uint64_t seed = 0x5EED;
};

// Search ranges for set-level certificates.
inline constexpr int kInvertSearchMax = 40;  // exponent n in the inf bound
inline constexpr int kMarginSearchMax = 64;  // neighborhood margin exponent m

// Derivative depth defaults.
inline constexpr int kGinftyOrderMax = 12;
inline constexpr int kUnicityDepthMax = 10;

// Stored series coefficients beyond this index must come from a tail law.
inline constexpr int kSeriesStoreMax = 64;

// Contour quadrature nodes (total per closed path).
inline constexpr int kQuadNodes = 512;

// Slack factor for one-sided numeric inequalities.
inline constexpr double kIneqSlack = 1.0 + 1e-9;

// Runtime configuration shared by the tools; precedence is
// command line > scenario header > these defaults.
struct Config {
    Rational cap = kDefaultCap;
    GridSpec grid{};
    int quad_nodes = kQuadNodes;
    OracleParams oracle{};
    SampleParams sampling{};
};

}  // namespace rhosharp
