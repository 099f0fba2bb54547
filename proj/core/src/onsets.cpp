#include "rhosharp/onsets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rhosharp/errors.hpp"

namespace rhosharp {

Classification OnSetReport::worst() const {
    Classification w;
    w.kind = Classification::Kind::Negligible;
    w.detail = "no orders classified";
    bool first = true;
    for (const auto& oc : per_order) {
        if (oc.cls.kind == Classification::Kind::Neither) return oc.cls;
        if (first) {
            w = oc.cls;
            first = false;
            continue;
        }
        if (w.kind == Classification::Kind::Negligible &&
            oc.cls.kind == Classification::Kind::Moderate)
            w = oc.cls;
        else if (w.kind == Classification::Kind::Moderate &&
                 oc.cls.kind == Classification::Kind::Moderate && oc.cls.n > w.n)
            w = oc.cls;
    }
    return w;
}

int OnSetReport::max_exponent() const {
    int n = 0;
    for (const auto& oc : per_order) {
        if (oc.cls.kind == Classification::Kind::Neither) return -1;
        if (oc.cls.kind == Classification::Kind::Moderate) n = std::max(n, oc.cls.n);
    }
    return n;
}

namespace {

std::vector<std::pair<int, int>> derivative_orders(const GenFunction& u, int k_max) {
    std::vector<std::pair<int, int>> orders;
    if (u.is_poly()) {
        for (int total = 0; total <= k_max; ++total)
            for (int p = total; p >= 0; --p) orders.emplace_back(p, total - p);
    } else if (u.is_series() || (u.is_sampled() && u.as_sampled().has_poly())) {
        for (int k = 0; k <= k_max; ++k) orders.emplace_back(k, 0);
    } else {
        orders.emplace_back(0, 0);
    }
    return orders;
}

}  // namespace

OnSetReport classify_on_set(const GenFunction& u, const InternalSetRep& A, int k_max, int pad,
                            const Config& cfg) {
    auto bounded = is_sharply_bounded(A, cfg.grid, cfg.oracle);
    if (!bounded.bounded)
        throw UnsupportedOperationError("uniform classification needs a sharply bounded set");

    const auto orders = derivative_orders(u, k_max);
    std::vector<GenFunction> ds;
    ds.reserve(orders.size());
    for (auto [p, q] : orders) ds.push_back(p == 0 && q == 0 ? u : derivative_mixed(u, p, q));

    std::vector<SampledNet> nets(orders.size());
    for (auto& net : nets) net.grid = cfg.grid;
    const auto unit = make_unit_samples(cfg.sampling);

    for (int j = 0; j < cfg.grid.size(); ++j) {
        const double eps = cfg.grid.eps(j);
        const double leps = cfg.grid.log_eps(j);
        ConcreteShape shape = concretize(A, eps);
        std::vector<Complex> pts;
        if (!shape.degenerate) {
            auto mapped = map_samples(grow(shape, std::pow(eps, pad)), unit);
            pts = mapped.all();
        }
        for (std::size_t oi = 0; oi < orders.size(); ++oi) {
            double sup = 0.0;
            bool bad = false;
            for (Complex z : pts) {
                double val = std::abs(ds[oi].eval_net(eps, z));
                if (!std::isfinite(val)) {
                    bad = true;
                    break;
                }
                sup = std::max(sup, val);
            }
            nets[oi].points.push_back(
                {eps, leps, Complex(sup, 0.0),
                 sup == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(sup), bad});
        }
    }

    OnSetReport rep;
    for (std::size_t oi = 0; oi < orders.size(); ++oi) {
        nets[oi].label = "sup |d^(" + std::to_string(orders[oi].first) + "," +
                         std::to_string(orders[oi].second) + ")|";
        rep.per_order.push_back(
            {orders[oi].first, orders[oi].second, classify(nets[oi], cfg.oracle)});
    }
    return rep;
}

namespace {

Complex project_onto(const ConcreteShape& s, Complex p) {
    switch (s.kind) {
        case ShapeKind::Disc: {
            Complex d = p - s.a;
            double m = std::abs(d);
            return m <= s.r1 ? p : s.a + d * (s.r1 / m);
        }
        case ShapeKind::Circle: {
            Complex d = p - s.a;
            double m = std::abs(d);
            return m == 0.0 ? s.a + Complex(s.r1, 0.0) : s.a + d * (s.r1 / m);
        }
        case ShapeKind::Annulus: {
            Complex d = p - s.a;
            double m = std::abs(d);
            if (m < s.r1) return m == 0.0 ? s.a + Complex(s.r1, 0.0) : s.a + d * (s.r1 / m);
            if (m > s.r2) return s.a + d * (s.r2 / m);
            return p;
        }
        case ShapeKind::Rectangle:
            return {std::clamp(p.real(), s.a.real(), s.b.real()),
                    std::clamp(p.imag(), s.a.imag(), s.b.imag())};
        default: {  // segment, possibly grown into a capsule of half-width r1
            Complex d = s.b - s.a;
            double L2 = std::norm(d);
            double t = L2 == 0.0 ? 0.0
                                 : std::clamp(((p - s.a) * std::conj(d)).real() / L2, 0.0, 1.0);
            Complex q = s.a + t * d;
            Complex off = p - q;
            double m = std::abs(off);
            if (m <= s.r1 || m == 0.0) return m == 0.0 && s.r1 == 0.0 ? q : (m <= s.r1 ? p : q);
            return q + off * (s.r1 / m);
        }
    }
}

Complex refine_minimum(const std::function<double(Complex)>& f, const ConcreteShape& s,
                       Complex start, double step) {
    static const Complex dirs[8] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                    {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
    const double step_floor = 1e-30 * step;  // relative: shapes can be rho-power sized
    Complex best = project_onto(s, start);
    double fb = f(best);
    for (int it = 0; it < 160 && step > step_floor; ++it) {
        bool improved = false;
        for (const Complex& d : dirs) {
            Complex cand = project_onto(s, best + step * d);
            double fc = f(cand);
            if (fc < fb) {
                fb = fc;
                best = cand;
                improved = true;
                break;
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

double shape_scale(const ConcreteShape& s) {
    switch (s.kind) {
        case ShapeKind::Disc:
        case ShapeKind::Circle:
            return std::max(s.r1, 1e-300);
        case ShapeKind::Annulus:
            return std::max(s.r2, 1e-300);
        default:
            return std::max(std::abs(s.b - s.a) + s.r1, 1e-300);
    }
}

struct SectionScan {
    double inf = std::numeric_limits<double>::infinity();
    Complex where{};
    double sup = 0.0;
    // below this the optimizer cannot separate the infimum from a true zero
    double noise_floor() const {
        return 64.0 * std::numeric_limits<double>::epsilon() * sup;
    }
};

// Multistart descent for inf |u_eps| over a concrete shape.
SectionScan sampled_infimum(const GenFunction& u, double eps, const ConcreteShape& shape,
                            const UnitSamples& unit) {
    auto f = [&](Complex z) { return std::abs(u.eval_net(eps, z)); };
    auto pts = map_samples(shape, unit).all();
    SectionScan scan;
    if (pts.empty()) return scan;
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        vals[i] = f(pts[i]);
        scan.sup = std::max(scan.sup, vals[i]);
    }
    std::partial_sort(idx.begin(), idx.begin() + std::min<std::size_t>(4, idx.size()), idx.end(),
                      [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const double step = shape_scale(shape) / 8.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(4, idx.size()); ++i) {
        Complex z = refine_minimum(f, shape, pts[idx[i]], step);
        double v = f(z);
        if (v < scan.inf) {
            scan.inf = v;
            scan.where = z;
        }
    }
    return scan;
}

bool point_invertible(const GenFunction& u, const GenComplex& x, const Config& cfg) {
    if (u.is_poly() || u.is_series()) return is_invertible(eval(u, x, cfg).value);
    auto net = sample(
        [&](double eps) {
            Complex v = u.eval_net(eps, x.eval_complex(eps));
            double m = std::abs(v);
            return m == 0.0 ? Complex{std::numeric_limits<double>::infinity(), 0.0}
                            : Complex{1.0 / m, 0.0};
        },
        cfg.grid, "reciprocal at point");
    return classify(net, cfg.oracle).kind == Classification::Kind::Moderate;
}

}  // namespace

InvertibilityReport invertibility_on_set(const GenFunction& u, const InternalSetRep& A,
                                         const Config& cfg) {
    auto bounded = is_sharply_bounded(A, cfg.grid, cfg.oracle);
    if (!bounded.bounded)
        throw UnsupportedOperationError("invertibility search needs a sharply bounded set");

    InvertibilityReport rep;
    const auto unit = make_unit_samples(cfg.sampling);
    const int first = std::max(0, cfg.grid.size() - cfg.oracle.window);

    // One minimization per tail section; the exponent search then only
    // compares numbers. An infimum at the optimizer's noise floor is
    // indistinguishable from a true zero and certifies nothing.
    struct Section {
        double eps, log_eps;
        SectionScan scan;
    };
    std::vector<Section> sections;
    for (int j = first; j < cfg.grid.size(); ++j) {
        const double eps = cfg.grid.eps(j);
        ConcreteShape shape = concretize(A, eps);
        if (shape.degenerate) continue;  // empty section: any bound holds vacuously
        sections.push_back({eps, cfg.grid.log_eps(j), sampled_infimum(u, eps, shape, unit)});
    }

    for (int n = 1; n <= kInvertSearchMax && !rep.invertible; ++n) {
        bool ok = true;
        for (const auto& sec : sections) {
            if (sec.scan.inf <= sec.scan.noise_floor() ||
                !(std::log(sec.scan.inf) >= n * sec.log_eps)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            rep.invertible = true;
            rep.n = n;
        }
    }

    if (rep.invertible) {
        SampledCallable rc;
        rc.center = AsymptoticScalar::zero();
        rc.label = "1/(" + to_string(u) + ")";
        rc.f = [uu = u](double eps, Complex z) { return 1.0 / uu.eval_net(eps, z); };
        GenFunction recip;
        recip.rep = std::move(rc);
        recip.label = rc.label;
        recip.domain = A;
        rep.reciprocal = recip;
        rep.detail = "inf |u| >= eps^" + std::to_string(rep.n) + " over the tail sections";
    } else {
        for (const auto& sec : sections) rep.witness.push_back({sec.eps, sec.scan.where});
        rep.detail = "no exponent up to " + std::to_string(kInvertSearchMax) +
                     " certifies a uniform lower bound";
    }

    // pointwise cross-check of the other characterization
    if (!A.has_net_radius()) {
        bool all_inv = true;
        int checked = 0;
        for (const auto& x : sample_member_points(A, 100)) {
            ++checked;
            if (!point_invertible(u, x, cfg)) {
                all_inv = false;
                break;
            }
        }
        rep.points_checked = checked;
        if (rep.invertible) {
            rep.pointwise_agrees = all_inv;
        } else {
            // the minimizing net is itself the candidate non-invertible point:
            // values at the noise floor cannot be separated from a true zero
            bool witness_bad = true;
            if (!sections.empty()) {
                bool bottomed = true;
                SampledNet recip_net;
                recip_net.grid = cfg.grid;
                recip_net.label = "1/|u| along the witness";
                for (const auto& sec : sections) {
                    double m = std::abs(u.eval_net(sec.eps, sec.scan.where));
                    if (m > sec.scan.noise_floor()) bottomed = false;
                    double r = m == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / m;
                    recip_net.points.push_back({sec.eps, sec.log_eps, Complex(r, 0.0),
                                                std::isfinite(r) ? std::log(r) : 0.0,
                                                !std::isfinite(r)});
                }
                witness_bad = bottomed ||
                              classify(recip_net, cfg.oracle).kind != Classification::Kind::Moderate;
            }
            rep.pointwise_agrees = !all_inv || witness_bad;
        }
    }
    return rep;
}

}  // namespace rhosharp
