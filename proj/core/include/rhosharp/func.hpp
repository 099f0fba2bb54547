#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rhosharp/series.hpp"
#include "rhosharp/sets.hpp"
#include "rhosharp/value.hpp"

namespace rhosharp {

// Finite sum of monomials z^p conj(z)^q with generalized coefficients.
// Keeping conj(z) as its own variable makes the conjugate-direction
// derivative a plain coefficient filter.
struct FixedPoly {
    std::map<std::pair<int, int>, GenComplex> coeffs;

    int max_z_degree() const;
    int max_conj_degree() const;
    bool pure_z() const;  // no conj(z) monomial with a nonzero coefficient
};

// Truncation schedule: how many series terms the representative keeps at a
// given epsilon. Must be nondecreasing as eps -> 0 with limit infinity.
struct Schedule {
    std::function<int(double)> m;
    std::string label;

    static Schedule log_default();  // ceil(ln(1/eps))
};

// Polynomial net obtained by truncating a power series along a schedule.
struct TruncatedSeries {
    PowerSeries series;
    Schedule schedule = Schedule::log_default();
};

// Arbitrary per-epsilon callable. When the net is polynomial per epsilon the
// optional coefficient generator (in powers of z - center) unlocks exact
// derivatives and deflation; a bare callable supports only sampling.
struct SampledCallable {
    std::function<Complex(double, Complex)> f;
    GenComplex center;
    std::function<std::vector<Complex>(double)> poly;
    std::string label;

    bool has_poly() const { return static_cast<bool>(poly); }
};

class GenFunction {
public:
    using Rep = std::variant<FixedPoly, TruncatedSeries, SampledCallable>;

    Rep rep;
    std::optional<InternalSetRep> domain;
    std::string label;

    static GenFunction poly(std::map<std::pair<int, int>, GenComplex> coeffs,
                            std::string label = {});
    static GenFunction monomial(int p, int q, GenComplex coeff);
    static GenFunction constant(GenComplex c);
    static GenFunction identity(Rational cap = Rational(kDefaultCap));     // z
    static GenFunction conj_identity(Rational cap = Rational(kDefaultCap));  // conj(z)
    static GenFunction truncated(PowerSeries s, Schedule sch = Schedule::log_default());
    static GenFunction sampled(std::function<Complex(double, Complex)> f, std::string label);
    // z^floor(ln(1/eps)): polynomial of growing degree, zero at every point
    // of negligible modulus yet nowhere the zero function.
    static GenFunction ks_net();

    GenFunction with_domain(InternalSetRep dom) const;

    bool is_poly() const { return std::holds_alternative<FixedPoly>(rep); }
    bool is_series() const { return std::holds_alternative<TruncatedSeries>(rep); }
    bool is_sampled() const { return std::holds_alternative<SampledCallable>(rep); }
    const FixedPoly& as_poly() const { return std::get<FixedPoly>(rep); }
    const TruncatedSeries& as_series() const { return std::get<TruncatedSeries>(rep); }
    const SampledCallable& as_sampled() const { return std::get<SampledCallable>(rep); }

    // Value of the representative net at one epsilon.
    Complex eval_net(double eps, Complex z) const;
};

// Exact ring operations; defined for fixed polynomials (and scalar factors).
GenFunction operator+(const GenFunction& u, const GenFunction& v);
GenFunction operator-(const GenFunction& u, const GenFunction& v);
GenFunction operator*(const GenFunction& u, const GenFunction& v);
GenFunction operator*(const GenComplex& c, const GenFunction& u);
GenFunction conj(const GenFunction& u);

GenValue eval(const GenFunction& u, const GenComplex& z, const Config& cfg = {});

// k-fold d/dz. Series laws shift; bare callables are rejected.
GenFunction derivative(const GenFunction& u, int k = 1);
// Mixed order: p in the z direction, q in the conj(z) direction.
GenFunction derivative_mixed(const GenFunction& u, int p, int q);

struct HolomorphyReport {
    bool holomorphic = false;
    std::string detail;
    std::optional<Classification> cls;  // sampled evidence where one was needed
};

HolomorphyReport dbar_test(const GenFunction& u, const InternalSetRep& domain,
                           const Config& cfg = {});
HolomorphyReport dbar_test(const GenFunction& u, const SharpBall& ball, const Config& cfg = {});

// v after u; the range condition u(A) inside B is spot-checked at sampled
// member points (falsification only).
GenFunction compose(const GenFunction& v, const GenFunction& u, const InternalSetRep& A,
                    const InternalSetRep& B, const Config& cfg = {});

struct GinftyReport {
    bool yes = false;
    int N = -1;             // single exponent covering every tested order
    int witness_order = -1;  // order that forced the exponent past the limit
    std::string detail;
};

GinftyReport is_Ginfty(const GenFunction& u, const InternalSetRep& set,
                       int k_max = kGinftyOrderMax, const Config& cfg = {});
GinftyReport is_Ginfty(const GenFunction& u, const SharpBall& ball,
                       int k_max = kGinftyOrderMax, const Config& cfg = {});

std::string to_string(const GenFunction& u);

}  // namespace rhosharp
