#include "rhosharp/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rhosharp/errors.hpp"

namespace rhosharp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}

SampledNet sample(const std::function<Complex(double)>& f, const GridSpec& grid,
                  std::string label) {
    SampledNet net{grid, {}, std::move(label)};
    net.points.reserve(grid.size());
    for (int idx = 0; idx < grid.size(); ++idx) {
        NetPoint p;
        p.eps = grid.eps(idx);
        p.log_eps = grid.log_eps(idx);
        p.value = f(p.eps);
        if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag())) {
            p.overflow = true;
            p.log_abs = kInf;
        } else {
            double a = std::abs(p.value);
            p.log_abs = a == 0.0 ? -kInf : std::log(a);
        }
        net.points.push_back(p);
    }
    return net;
}

SampledNet sample(const AsymptoticScalar& x, const GridSpec& grid) {
    SampledNet net{grid, {}, to_string(x)};
    net.points.reserve(grid.size());
    for (int idx = 0; idx < grid.size(); ++idx) {
        NetPoint p;
        p.eps = grid.eps(idx);
        p.log_eps = grid.log_eps(idx);
        p.value = x.eval_complex(p.eps);
        p.log_abs = x.log_abs(p.eps);
        net.points.push_back(p);
    }
    return net;
}

SampledNet sample_log(const std::function<double(double)>& log_abs_f, const GridSpec& grid,
                      std::string label) {
    SampledNet net{grid, {}, std::move(label)};
    net.points.reserve(grid.size());
    for (int idx = 0; idx < grid.size(); ++idx) {
        NetPoint p;
        p.eps = grid.eps(idx);
        p.log_eps = grid.log_eps(idx);
        p.log_abs = log_abs_f(p.eps);
        if (std::isnan(p.log_abs) || p.log_abs == kInf) {
            p.overflow = true;
            p.log_abs = kInf;
        } else {
            p.value = p.log_abs == -kInf ? Complex{} : Complex{std::exp(p.log_abs), 0.0};
        }
        net.points.push_back(p);
    }
    return net;
}

namespace {

std::vector<const NetPoint*> tail_window(const SampledNet& net, int window) {
    std::vector<const NetPoint*> out;
    int n = static_cast<int>(net.points.size());
    int start = std::max(0, n - window);
    for (int i = start; i < n; ++i) out.push_back(&net.points[i]);
    return out;
}

}  // namespace

ValuationEstimate estimate_valuation(const SampledNet& net, const OracleParams& params) {
    ValuationEstimate est;
    auto tail = tail_window(net, params.window);
    std::vector<const NetPoint*> usable;
    int zeros = 0;
    for (const NetPoint* p : tail) {
        if (p->overflow) continue;
        if (p->log_abs == -kInf) {
            ++zeros;
            continue;
        }
        usable.push_back(p);
    }
    if (!tail.empty() && zeros == static_cast<int>(tail.size())) {
        est.status = ValuationEstimate::Status::AllZero;
        return est;
    }
    // The slope is meaningless from a couple of stray points. Exact zeros do
    // count toward coverage: a value that underflowed sits even deeper than
    // anything the usable points suggest.
    if (static_cast<int>(usable.size()) < 2 ||
        static_cast<int>(usable.size()) + zeros < std::max(2, params.window / 2)) {
        est.status = ValuationEstimate::Status::InsufficientData;
        return est;
    }
    double mx = 0, my = 0;
    for (const NetPoint* p : usable) {
        mx += p->log_eps;
        my += p->log_abs;
    }
    mx /= usable.size();
    my /= usable.size();
    double sxx = 0, sxy = 0;
    for (const NetPoint* p : usable) {
        sxx += (p->log_eps - mx) * (p->log_eps - mx);
        sxy += (p->log_eps - mx) * (p->log_abs - my);
    }
    est.value = sxy / sxx;
    double ss = 0;
    for (const NetPoint* p : usable) {
        double r = p->log_abs - (my + est.value * (p->log_eps - mx));
        ss += r * r;
    }
    est.residual = std::sqrt(ss / usable.size());
    est.points_used = static_cast<int>(usable.size());
    est.status = ValuationEstimate::Status::Ok;
    return est;
}

Classification classify(const SampledNet& net, const OracleParams& params) {
    Classification c;
    auto tail = tail_window(net, params.window);
    if (tail.empty()) {
        c.kind = Classification::Kind::Neither;
        c.detail = "no grid points";
        return c;
    }
    bool all_zero = true;
    for (const NetPoint* p : tail)
        if (p->overflow || p->log_abs != -kInf) all_zero = false;
    if (all_zero) {
        c.kind = Classification::Kind::Negligible;
        c.detail = "identically zero on the tail window";
        return c;
    }
    for (const NetPoint* p : tail)
        if (p->overflow) {
            c.kind = Classification::Kind::Neither;
            c.detail = "magnitude left the double range on the tail window";
            return c;
        }
    ValuationEstimate est = estimate_valuation(net, params);
    if (est.status == ValuationEstimate::Status::Ok) {
        c.estimate = est.value;
        c.has_estimate = true;
        if (est.value >= params.v_neg) {
            c.kind = Classification::Kind::Negligible;
            c.detail = "slope " + std::to_string(est.value) + " clears the negligibility threshold";
            return c;
        }
    }
    // Smallest N with |x_eps| <= eps^-N across the tail: N >= log|x| / log(1/eps).
    int n_bound = 0;
    for (const NetPoint* p : tail) {
        if (p->log_abs == -kInf) continue;
        double ratio = p->log_abs / (-p->log_eps);
        int nj = static_cast<int>(std::ceil(ratio - 1e-9));
        n_bound = std::max(n_bound, nj);
    }
    if (n_bound <= params.n_max) {
        c.kind = Classification::Kind::Moderate;
        c.n = n_bound;
        return c;
    }
    c.kind = Classification::Kind::Neither;
    c.detail = "tail bound needs eps^-" + std::to_string(n_bound);
    return c;
}

SampledNet net_difference(const SampledNet& a, const SampledNet& b) {
    if (a.points.size() != b.points.size()) throw Error("net_difference: grids disagree");
    SampledNet out{a.grid, {}, a.label + " - " + b.label};
    out.points.reserve(a.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        const NetPoint& pa = a.points[i];
        const NetPoint& pb = b.points[i];
        NetPoint p;
        p.eps = pa.eps;
        p.log_eps = pa.log_eps;
        p.overflow = pa.overflow || pb.overflow;
        p.value = pa.value - pb.value;
        double m = std::abs(p.value);
        p.log_abs = p.overflow ? kInf : (m == 0.0 ? -kInf : std::log(m));
        out.points.push_back(p);
    }
    return out;
}

Classification classify_relative(const SampledNet& diff, const SampledNet& scale,
                                 const OracleParams& params, double snap_tol) {
    if (diff.points.size() != scale.points.size())
        throw Error("classify_relative: grids disagree");
    SampledNet snapped = diff;
    for (std::size_t i = 0; i < snapped.points.size(); ++i) {
        NetPoint& p = snapped.points[i];
        const NetPoint& s = scale.points[i];
        if (p.overflow || s.overflow) continue;
        double floor = snap_tol * std::abs(s.value);
        if (std::abs(p.value) <= floor) {
            p.value = Complex{};
            p.log_abs = -kInf;
        }
    }
    return classify(snapped, params);
}

std::string to_string(const Classification& c) {
    switch (c.kind) {
        case Classification::Kind::Moderate:
            return "moderate(" + std::to_string(c.n) + ")";
        case Classification::Kind::Negligible:
            return "negligible";
        default:
            return "neither" + (c.detail.empty() ? "" : ": " + c.detail);
    }
}

}  // namespace rhosharp
