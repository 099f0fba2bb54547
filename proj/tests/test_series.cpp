#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "rhosharp/errors.hpp"
#include "rhosharp/series.hpp"

using namespace rhosharp;

namespace {

AsymptoticScalar num(double v) { return AsymptoticScalar::constant(v); }
AsymptoticScalar rho_pow(Rational e) { return AsymptoticScalar::monomial(1.0, e); }

// Brute-force 1/limsup ||a_n||^(1/n) from a law, far past the stored prefix.
double radius_limit(const TailLaw& law, int n_hi) {
    double last = 0.0;
    for (int n = n_hi - 8; n <= n_hi; ++n) {
        if (!law.in_range(n)) continue;
        last = std::exp(law.g(n) / n);  // ||a_n||^(1/n) = e^(-g(n)/n)
    }
    return last;
}

}  // namespace

TEST_CASE("affine laws give radius e^c exactly") {
    for (int c = -2; c <= 2; ++c) {
        PowerSeries s;
        s.center = AsymptoticScalar::zero();
        s.law = TailLaw::affine(Rational(c));
        for (int n = 0; n < 8; ++n) s.coeffs.push_back(rho_pow(Rational(c * n)));
        auto rep = convergence_radius(s);
        CHECK(rep.method == RadiusReport::Method::ExactLaw);
        CHECK(rep.R == doctest::Approx(std::exp(double(c))).epsilon(1e-12));
        CHECK_FALSE(rep.estimate_warning);
        // the closed form matches the term-norm limit
        CHECK(rep.R == doctest::Approx(radius_limit(*s.law, 200)).epsilon(1e-2));
    }
}

TEST_CASE("quadratic law gives infinite radius") {
    auto s = PowerSeries::rho_nsq();
    auto rep = convergence_radius(s);
    CHECK(rep.method == RadiusReport::Method::ExactLaw);
    CHECK(std::isinf(rep.R));
}

TEST_CASE("n/log n law gives radius 1 and a slowly sinking tail") {
    auto s = PowerSeries::rho_n_over_log_n();
    auto rep = convergence_radius(s);
    CHECK(rep.method == RadiusReport::Method::ExactLaw);
    CHECK(rep.R == doctest::Approx(1.0).epsilon(1e-12));
    // -g(n)/n = 1/ln n -> 0 but every term norm e^{n/ln n} blows up
    CHECK(s.law->g(100) < 0.0);
}

TEST_CASE("table laws terminate and are entire") {
    PowerSeries s;
    s.center = AsymptoticScalar::zero();
    s.coeffs = {num(1), num(2), num(3)};
    s.law = TailLaw::table_law({Rational(0), Rational(0), Rational(0)});
    auto rep = convergence_radius(s);
    CHECK(rep.method == RadiusReport::Method::ExactLaw);
    CHECK(std::isinf(rep.R));
    CHECK_FALSE(s.law->in_range(3));
}

TEST_CASE("undeclared tails produce flagged estimates") {
    PowerSeries s;
    s.center = AsymptoticScalar::zero();
    for (int n = 0; n < 32; ++n) s.coeffs.push_back(num(1));
    auto rep = convergence_radius(s);
    CHECK(rep.method == RadiusReport::Method::EstimatedFromStored);
    CHECK(rep.estimate_warning);
    CHECK(rep.R == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("geometric series sums to 1/(1-z) for z = rho^a") {
    auto s = PowerSeries::geometric();
    for (Rational a : {Rational(1, 2), Rational(1), Rational(2)}) {
        auto z = rho_pow(a);
        auto got = sum_at(s, z);
        auto want = invert(num(1) - z);
        CHECK(equal_up_to_cap(got.value, want));
        CHECK(got.tail_norm_bound <= std::exp(-24.0) * (1 + 1e-12));  // default precision cap
    }
}

TEST_CASE("summing the geometric series at z=2 yields a divergence certificate") {
    auto s = PowerSeries::geometric();
    CHECK_THROWS_AS(sum_at(s, num(2.0)), NotInRadiusError);
    try {
        sum_at(s, num(2.0));
    } catch (const NotInRadiusError& e) {
        CHECK(e.certificate.find("t_0") != std::string::npos);
        CHECK(std::string(e.what()).find("radius") != std::string::npos);
    }
}

TEST_CASE("summing at sharp norm exactly R certifies stalled terms") {
    auto s = PowerSeries::geometric();
    // ||1 + rho|| = 1 = R: term norms never sink, so partial sums cannot settle
    CHECK_THROWS_AS(sum_at(s, num(1.0) + AsymptoticScalar::rho()), NotInRadiusError);
    try {
        sum_at(s, num(1.0) + AsymptoticScalar::rho());
    } catch (const NotInRadiusError& e) {
        CHECK(e.certificate.find("stall") != std::string::npos);
    }
}

TEST_CASE("tail bound shrinks with the requested precision") {
    auto s = PowerSeries::geometric();
    auto z = rho_pow(Rational(1));
    for (int m : {4, 9, 14}) {
        auto lo = sum_at(s, z, Rational(m));
        auto hi = sum_at(s, z, Rational(m + 5));
        CHECK(lo.tail_norm_bound <= std::exp(-double(m)) * (1 + 1e-12));
        CHECK(hi.tail_norm_bound <= std::exp(-double(m + 5)) * (1 + 1e-12));
        CHECK(hi.tail_norm_bound < lo.tail_norm_bound);
        // the two partial sums differ by at most the coarser tail
        auto diff = lo.value - hi.value;
        auto nrm = diff.sharp_norm();
        CHECK(nrm.value <= lo.tail_norm_bound * (1 + 1e-12));
    }
}

TEST_CASE("deflate inverts multiply_by_offset exactly") {
    auto s = PowerSeries::geometric(Rational(kDefaultCap), 12);
    auto shifted = multiply_by_offset(s);
    CHECK(shifted.stored() == 13);
    CHECK(shifted.a(0).empty());
    auto back = deflate(shifted);
    REQUIRE(back.stored() == s.stored());
    for (int n = 0; n < s.stored(); ++n) CHECK(equal_up_to_cap(back.a(n), s.a(n)));
    CHECK(back.law->offset == s.law->offset);
}

TEST_CASE("deflation shifts the law consistently") {
    auto s = PowerSeries::rho_nsq(8);
    auto shifted = multiply_by_offset(s);
    // effective valuation of the new a_{n+1} equals the old g(n)
    CHECK(shifted.law->g(3) == doctest::Approx(s.law->g(2)));
    auto back = deflate(shifted);
    CHECK(back.law->g(5) == doctest::Approx(s.law->g(5)));
}

TEST_CASE("deflating a series with nonzero constant term throws") {
    auto s = PowerSeries::geometric();
    CHECK_THROWS_AS(deflate(s), ConstantTermNotZeroError);
}

TEST_CASE("validate rejects stored coefficients that contradict the law") {
    PowerSeries s;
    s.center = AsymptoticScalar::zero();
    s.law = TailLaw::affine(Rational(1));
    s.coeffs = {num(1), rho_pow(Rational(1)), rho_pow(Rational(5))};  // g(2) = 2, not 5
    CHECK_THROWS_AS(validate(s), Error);

    PowerSeries t;
    t.center = AsymptoticScalar::zero();
    t.law = TailLaw::table_law({Rational(0)});
    t.coeffs = {num(1), num(1)};  // nonzero past the declared end
    CHECK_THROWS_AS(validate(t), Error);

    CHECK_NOTHROW(validate(PowerSeries::geometric()));
    CHECK_NOTHROW(validate(PowerSeries::rho_nsq()));
    CHECK_NOTHROW(validate(PowerSeries::rho_n_over_log_n()));
}

TEST_CASE("sum_at without a law gives up honestly when storage runs out") {
    PowerSeries s;
    s.center = AsymptoticScalar::zero();
    for (int n = 0; n < 6; ++n) s.coeffs.push_back(num(1));
    // at z = 1/2 the stored terms never reach sharp norm e^{-24}:
    // every partial sum stops with an unmet precision target
    CHECK_THROWS_AS(sum_at(s, num(0.5)), NotConvergedError);
}

TEST_CASE("sum_at respects generalized centers") {
    auto s = PowerSeries::geometric();
    s.center = AsymptoticScalar::rho();
    auto z = AsymptoticScalar::rho() + rho_pow(Rational(2));
    auto got = sum_at(s, z);  // dz = rho^2
    auto want = invert(num(1) - rho_pow(Rational(2)));
    CHECK(equal_up_to_cap(got.value, want));
}
