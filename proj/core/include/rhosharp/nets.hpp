#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rhosharp/config.hpp"
#include "rhosharp/scalar.hpp"

namespace rhosharp {

struct NetPoint {
    double eps = 0.0;
    double log_eps = 0.0;
    Complex value{};
    double log_abs = 0.0;  // -inf for an exact zero
    // Set when the magnitude itself is unknown (callable overflowed and no
    // analytic log was available). A finite log_abs with an overflowing value
    // is still usable for classification.
    bool overflow = false;
};

// A representative net observed on the epsilon grid.
struct SampledNet {
    GridSpec grid{};
    std::vector<NetPoint> points;
    std::string label;
};

SampledNet sample(const std::function<Complex(double)>& f, const GridSpec& grid,
                  std::string label = {});
// Exact log magnitudes; immune to double overflow at steep exponents.
SampledNet sample(const AsymptoticScalar& x, const GridSpec& grid);
// Caller supplies log|x_eps| directly (phase unknown).
SampledNet sample_log(const std::function<double(double)>& log_abs_f, const GridSpec& grid,
                      std::string label = {});

struct ValuationEstimate {
    enum class Status { Ok, AllZero, InsufficientData };
    Status status = Status::InsufficientData;
    double value = 0.0;     // least-squares slope of log|x| against log eps
    double residual = 0.0;  // rms deviation from the fitted line
    int points_used = 0;
};

ValuationEstimate estimate_valuation(const SampledNet& net, const OracleParams& params = {});

struct Classification {
    enum class Kind { Moderate, Negligible, Neither };
    Kind kind = Kind::Neither;
    int n = 0;               // Moderate: smallest certified bound |x| <= eps^-n on the tail
    double estimate = 0.0;   // slope estimate when available
    bool has_estimate = false;
    std::string detail;

    bool is_negligible() const { return kind == Kind::Negligible; }
    bool is_moderate() const { return kind != Kind::Neither; }
};

// Negligible wins over Moderate when both certificates hold.
Classification classify(const SampledNet& net, const OracleParams& params = {});

SampledNet net_difference(const SampledNet& a, const SampledNet& b);

// Equality test for nets that agree analytically but were computed through
// floating point: per-point deviations at the rounding floor relative to
// `scale` are snapped to exact zeros before classifying.
Classification classify_relative(const SampledNet& diff, const SampledNet& scale,
                                 const OracleParams& params = {}, double snap_tol = 1e-12);

std::string to_string(const Classification& c);

}  // namespace rhosharp
